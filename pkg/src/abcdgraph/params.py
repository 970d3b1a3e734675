"""Model parameters, their validity ranges, and the config file format.

The generator is governed by eight parameters: node count n, degree exponent
gamma with minimum degree delta and maximum degree n**zeta, community-size
exponent beta with minimum size s and maximum size n**tau, and the noise
level xi controlling the fraction of edges routed through the background
graph.  ``variant`` selects the continuous or the discrete flavour of the
truncated power law used for sampling.
"""

import math
from dataclasses import dataclass, replace

from .errors import ParseError, RangeError

VARIANTS = ("continuous", "discrete")

# Guard against representation error in n**zeta when the true value is an
# integer (e.g. 1000**(1/3) evaluating to 9.999...).
_FLOOR_EPS = 1e-9

CONFIG_KEYS = ("n", "gamma", "delta", "zeta", "beta", "s", "tau", "xi", "variant")


def _power_floor(n: int, exponent: float) -> int:
    return int(math.floor(n**exponent + _FLOOR_EPS))


@dataclass(frozen=True)
class AbcdParams:
    n: int
    gamma: float
    delta: int
    zeta: float
    beta: float
    s: int
    tau: float
    xi: float
    variant: str = "discrete"

    @property
    def max_degree(self) -> int:
        """D = floor(n**zeta), the degree cap."""
        return _power_floor(self.n, self.zeta)

    @property
    def max_community_size(self) -> int:
        """S = floor(n**tau), the community size cap."""
        return _power_floor(self.n, self.tau)

    def with_updates(self, **kwargs) -> "AbcdParams":
        """Return a validated copy with the given fields replaced."""
        return validate_params(replace(self, **kwargs))


def validate_params(p: AbcdParams) -> AbcdParams:
    """Return ``p`` unchanged if every constraint holds, else raise RangeError.

    Constraints are checked in field order and the first violation is
    reported: n >= 1, gamma in (2,3), delta >= 1, zeta in (0, 1/(gamma-1)],
    beta in (1,2), s >= delta+1, tau in (zeta,1), xi in (0,1), a known
    variant, and the derived caps D >= delta, S >= s.
    """
    if not isinstance(p.n, int) or p.n < 1:
        raise RangeError("n", "must be a positive integer")
    if not 2.0 < p.gamma < 3.0:
        raise RangeError("gamma", f"{p.gamma} outside (2, 3)")
    if not isinstance(p.delta, int) or p.delta < 1:
        raise RangeError("delta", "must be a positive integer")
    if not 0.0 < p.zeta <= 1.0 / (p.gamma - 1.0):
        raise RangeError("zeta", f"{p.zeta} outside (0, 1/(gamma-1)] = (0, {1.0 / (p.gamma - 1.0):.6g}]")
    if not 1.0 < p.beta < 2.0:
        raise RangeError("beta", f"{p.beta} outside (1, 2)")
    if not isinstance(p.s, int) or p.s < p.delta + 1:
        raise RangeError("s", f"must be an integer >= delta+1 = {p.delta + 1}")
    if not p.zeta < p.tau < 1.0:
        raise RangeError("tau", f"{p.tau} outside (zeta, 1) = ({p.zeta}, 1)")
    if not 0.0 < p.xi < 1.0:
        raise RangeError("xi", f"{p.xi} outside (0, 1)")
    if p.variant not in VARIANTS:
        raise RangeError("variant", f"{p.variant!r} not one of {VARIANTS}")
    if p.max_degree < p.delta:
        raise RangeError("zeta", f"derived max degree {p.max_degree} < delta = {p.delta}")
    if p.max_community_size < p.s:
        raise RangeError("tau", f"derived max community size {p.max_community_size} < s = {p.s}")
    return p


def parse_config_text(text: str, path: str = "<string>") -> dict[str, str]:
    """Parse flat ``key=value`` lines; ``#`` starts a comment line."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"{path}: expected key=value, got {raw!r}", line=lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in values:
            raise ParseError(f"{path}: duplicate key {key!r}", line=lineno)
        values[key] = value
    return values


def params_from_mapping(values: dict[str, str], path: str = "<string>") -> AbcdParams:
    """Build and validate AbcdParams from string key/value pairs."""
    unknown = set(values) - set(CONFIG_KEYS)
    if unknown:
        raise ParseError(f"{path}: unknown keys {sorted(unknown)}")
    missing = set(CONFIG_KEYS) - set(values) - {"variant"}
    if missing:
        raise ParseError(f"{path}: missing keys {sorted(missing)}")

    def to_int(key: str) -> int:
        try:
            return int(values[key])
        except ValueError:
            raise ParseError(f"{path}: {key}={values[key]!r} is not an integer") from None

    def to_float(key: str) -> float:
        try:
            return float(values[key])
        except ValueError:
            raise ParseError(f"{path}: {key}={values[key]!r} is not a number") from None

    p = AbcdParams(
        n=to_int("n"),
        gamma=to_float("gamma"),
        delta=to_int("delta"),
        zeta=to_float("zeta"),
        beta=to_float("beta"),
        s=to_int("s"),
        tau=to_float("tau"),
        xi=to_float("xi"),
        variant=values.get("variant", "discrete"),
    )
    return validate_params(p)


def load_config(path) -> AbcdParams:
    """Read a parameter config file and return validated AbcdParams."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return params_from_mapping(parse_config_text(text, path=str(path)), path=str(path))


def render_config(p: AbcdParams) -> str:
    """Serialize params in the config format; inverse of load_config."""
    lines = [f"{key}={getattr(p, key)}" for key in CONFIG_KEYS]
    return "\n".join(lines) + "\n"

import pytest

from abcdgraph.errors import ParseError, RangeError
from abcdgraph.params import (
    AbcdParams,
    load_config,
    params_from_mapping,
    parse_config_text,
    render_config,
    validate_params,
)


def make(**overrides):
    base = dict(n=1000, gamma=2.5, delta=5, zeta=0.5, beta=1.5, s=50, tau=0.75, xi=0.2)
    base.update(overrides)
    return AbcdParams(**base)


class TestValidate:
    def test_reference_parameters_valid(self):
        p = make()
        assert validate_params(p) is p

    def test_gamma_boundary_excluded(self):
        with pytest.raises(RangeError) as err:
            validate_params(make(gamma=2.0))
        assert err.value.field == "gamma"

    def test_s_equal_delta_rejected(self):
        with pytest.raises(RangeError) as err:
            validate_params(make(delta=5, s=5))
        assert err.value.field == "s"

    @pytest.mark.parametrize(
        "field,value",
        [
            ("gamma", 3.0),
            ("delta", 0),
            ("zeta", 0.0),
            ("beta", 1.0),
            ("beta", 2.0),
            ("tau", 1.0),
            ("xi", 0.0),
            ("xi", 1.0),
        ],
    )
    def test_out_of_range_fields(self, field, value):
        with pytest.raises(RangeError):
            validate_params(make(**{field: value}))

    def test_zeta_capped_by_gamma(self):
        # 1/(gamma-1) = 2/3 for gamma=2.5
        validate_params(make(zeta=2.0 / 3.0))
        with pytest.raises(RangeError) as err:
            validate_params(make(zeta=0.7))
        assert err.value.field == "zeta"

    def test_tau_must_exceed_zeta(self):
        with pytest.raises(RangeError) as err:
            validate_params(make(zeta=0.5, tau=0.4))
        assert err.value.field == "tau"

    def test_derived_caps(self):
        p = make()
        assert p.max_degree == 31  # floor(1000**0.5)
        assert p.max_community_size == 177  # floor(1000**0.75)
        # D < delta: n=16, zeta=0.5 -> D=4 < delta=5
        with pytest.raises(RangeError):
            validate_params(make(n=16))

    def test_unknown_variant(self):
        with pytest.raises(RangeError) as err:
            validate_params(make(variant="exact"))
        assert err.value.field == "variant"


class TestConfig:
    def test_round_trip(self, tmp_path):
        p = validate_params(make(xi=0.37, variant="continuous"))
        path = tmp_path / "params.cfg"
        path.write_text(render_config(p))
        assert load_config(path) == p

    def test_comments_and_blanks(self, tmp_path):
        path = tmp_path / "params.cfg"
        path.write_text(
            "# reference setup\n\nn=1000\ngamma=2.5\ndelta=5\nzeta=0.5\n"
            "beta=1.5\ns=50\ntau=0.75\nxi=0.2\nvariant=discrete\n"
        )
        assert load_config(path) == make()

    def test_missing_key(self):
        values = parse_config_text("n=1000\ngamma=2.5\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\n")
        with pytest.raises(ParseError, match="xi"):
            params_from_mapping(values)

    def test_unknown_key(self):
        with pytest.raises(ParseError, match="extra"):
            params_from_mapping({"extra": "1"})

    def test_malformed_number(self):
        values = parse_config_text(
            "n=1000\ngamma=abc\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\nxi=0.2\n"
        )
        with pytest.raises(ParseError, match="gamma"):
            params_from_mapping(values)

    def test_bad_line_reports_line_number(self):
        with pytest.raises(ParseError) as err:
            parse_config_text("n=1000\nnonsense\n")
        assert err.value.line == 2

    def test_duplicate_key(self):
        with pytest.raises(ParseError):
            parse_config_text("n=1\nn=2\n")

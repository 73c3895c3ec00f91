"""Config grammar: parsing, validation, canonical round-trip."""

import math

import pytest

from qnls.config import (
    ConfigError,
    EXPERIMENTS,
    apply_overrides,
    default_config,
    parse_config,
    serialize_config,
)


MINIMAL = """
[experiment]
name = conservation
"""


class TestParse:
    def test_minimal(self):
        cfg = parse_config(MINIMAL)
        assert cfg.experiment == "conservation"
        assert cfg.output_dir == "runs/conservation"
        assert cfg.grid.modes == 32
        assert cfg.flow.cutoff is None

    def test_full_document(self):
        cfg = parse_config(
            """
            [experiment]
            name = transport_mc
            output_dir = out/tr

            [grid]
            modes = 16

            [flow]
            sigma = -1
            cutoff = 8
            dt = 0.002

            [measure]
            s = 2.0
            M = 16
            base_seed = 7

            [run]
            ensemble_size = 128
            workers = 2

            [params]
            times = 0.1, 0.2
            quantile = 0.85
            """
        )
        assert cfg.flow.cutoff == 8
        assert cfg.measure.base_seed == 7
        assert cfg.params["times"] == (0.1, 0.2)
        assert cfg.run.workers == 2

    def test_requires_name(self):
        with pytest.raises(ConfigError, match="name"):
            parse_config("[experiment]\noutput_dir = x\n")

    def test_unknown_experiment(self):
        with pytest.raises(ConfigError, match="unknown experiment"):
            parse_config("[experiment]\nname = quantum_leap\n")

    def test_unknown_section(self):
        with pytest.raises(ConfigError, match="unknown section"):
            parse_config(MINIMAL + "[extra]\nx = 1\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(MINIMAL + "[grid]\nmodez = 4\n")

    def test_unknown_param(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(MINIMAL + "[params]\nnot_a_knob = 1\n")

    def test_bad_type(self):
        with pytest.raises(ConfigError, match=r"\[grid\] modes"):
            parse_config(MINIMAL + "[grid]\nmodes = many\n")

    def test_field_validation_propagates(self):
        with pytest.raises(ConfigError, match="sigma"):
            parse_config(MINIMAL + "[flow]\nsigma = 2\n")

    def test_cutoff_full_keyword(self):
        cfg = parse_config(MINIMAL + "[flow]\ncutoff = full\n")
        assert cfg.flow.cutoff is None

    def test_cutoff_vs_grid(self):
        with pytest.raises(ConfigError, match="cutoff"):
            parse_config(MINIMAL + "[grid]\nmodes = 8\n\n[flow]\ncutoff = 16\n")


class TestRoundTrip:
    @pytest.mark.parametrize("name", EXPERIMENTS)
    def test_default_roundtrip(self, name):
        cfg = default_config(name)
        assert parse_config(serialize_config(cfg)) == cfg

    def test_roundtrip_preserves_irrational_floats(self):
        cfg = default_config("linear_invariance")
        assert math.pi in cfg.params["times"]
        back = parse_config(serialize_config(cfg))
        assert back.params["times"] == cfg.params["times"]


class TestOverrides:
    def test_all_overrides(self):
        cfg = default_config(
            "conservation",
            output_dir="elsewhere",
            base_seed=99,
            workers=3,
            dt=5e-4,
            t_end=2.5,
        )
        assert cfg.output_dir == "elsewhere"
        assert cfg.measure.base_seed == 99
        assert cfg.run.workers == 3
        assert cfg.flow.dt == 5e-4
        assert cfg.run.t_end == 2.5

    def test_none_overrides_are_inert(self):
        cfg = default_config("conservation")
        assert apply_overrides(cfg) == cfg

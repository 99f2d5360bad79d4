"""Tests for coefficient files, initial-data presets and run validation."""

import math

import numpy as np
import pandas as pd
import pytest

from liewave import ConfigurationError
from liewave.config.run_config import DataBlock, RunConfig
from liewave.data import CoefficientLoader, InitialDataBuilder, RunConfigValidator
from liewave.data.presets import describe_presets
from liewave.pipelines.reporting import coefficient_frame
from liewave.spectral import (
    GroupSpec,
    SpectralField,
    inverse_gft,
    make_grid,
    plancherel_norm,
    random_spectral_field,
)


@pytest.fixture
def circle2():
    return GroupSpec.torus([1], 2)


@pytest.fixture
def builder(test_settings, temp_directory):
    return InitialDataBuilder(test_settings, base_dir=temp_directory)


def _write_csv(path, rows):
    pd.DataFrame(rows, columns=["rep", "k", "l", "re", "im"]).to_csv(path, index=False)
    return path


class TestCoefficientLoader:
    """CSV coefficient files."""

    def test_listed_entries(self, test_settings, temp_directory, circle2):
        path = _write_csv(temp_directory / "u0.csv", [("1", 0, 0, 0.5, 0.0), ("-1", 0, 0, 0.5, -0.25)])
        F = CoefficientLoader(test_settings).load_coefficients(path, circle2)
        assert F.coefficient((1,))[0, 0] == 0.5
        assert F.coefficient((-1,))[0, 0] == 0.5 - 0.25j
        assert F.coefficient((0,))[0, 0] == 0.0

    def test_block_entries_on_su2(self, test_settings, temp_directory):
        spec = GroupSpec.su2(2)
        path = _write_csv(temp_directory / "u0.csv", [("1", 1, 0, 0.0, 2.0)])
        block = CoefficientLoader(test_settings).load_coefficients(path, spec).coefficient((1,))
        assert block.shape == (2, 2)
        assert block[1, 0] == 2.0j
        assert np.count_nonzero(block) == 1

    def test_reads_coefficient_dumps(self, test_settings, temp_directory, so3, rng):
        F = random_spectral_field(so3, rng)
        path = temp_directory / "dump.csv"
        coefficient_frame(F).to_csv(path, index=False, float_format="%.17g")
        loaded = CoefficientLoader(test_settings).load_coefficients(path, so3)
        assert loaded.max_abs_difference(F) == 0.0

    @pytest.mark.parametrize("line", ["1,0,0,0.5,", "1,0,0,nan,0.0", "1,0,0,inf,0.0", "1,,0,0.5,0.0", "1,0.5,0,1.0,0.0"])
    def test_rejects_incomplete_rows(self, test_settings, temp_directory, circle2, line):
        path = temp_directory / "u0.csv"
        path.write_text("rep,k,l,re,im\n0,0,0,1.0,0.0\n" + line + "\n")
        with pytest.raises(ConfigurationError, match="line 3"):
            CoefficientLoader(test_settings).load_coefficients(path, circle2)

    def test_parses_seventeen_digits_exactly(self, test_settings, temp_directory, circle2):
        values = [0.1 + 0.2, 1 / 3, math.pi * 1e-9]
        path = temp_directory / "u0.csv"
        path.write_text("rep,k,l,re,im\n" + "".join(
            f"{rep},0,0,{value:.17g},{-value:.17g}\n" for rep, value in zip(("-1", "0", "1"), values)
        ))
        F = CoefficientLoader(test_settings).load_coefficients(path, circle2)
        for rep, value in zip((-1, 0, 1), values):
            assert F.coefficient((rep,))[0, 0] == complex(value, -value)

    def test_missing_file(self, test_settings, temp_directory, circle2):
        with pytest.raises(ConfigurationError, match="not found"):
            CoefficientLoader(test_settings).load_coefficients(temp_directory / "absent.csv", circle2)

    def test_missing_columns(self, test_settings, temp_directory, circle2):
        path = temp_directory / "bad.csv"
        pd.DataFrame({"rep": ["1"], "re": [1.0]}).to_csv(path, index=False)
        with pytest.raises(ConfigurationError, match="lacks columns"):
            CoefficientLoader(test_settings).load_coefficients(path, circle2)

    def test_unknown_representation(self, test_settings, temp_directory, circle2):
        path = _write_csv(temp_directory / "u0.csv", [("3", 0, 0, 1.0, 0.0)])
        with pytest.raises(ConfigurationError, match="not in the dual"):
            CoefficientLoader(test_settings).load_coefficients(path, circle2)

    def test_entry_outside_block(self, test_settings, temp_directory):
        path = _write_csv(temp_directory / "u0.csv", [("1", 2, 0, 1.0, 0.0)])
        with pytest.raises(ConfigurationError, match="outside"):
            CoefficientLoader(test_settings).load_coefficients(path, GroupSpec.su2(2))


class TestInitialDataBuilder:
    """Fields built from preset strings."""

    def test_zero_and_constant(self, builder, circle2):
        assert plancherel_norm(builder.build_field_from_text("zero", circle2)) == 0.0
        constant = builder.build_field_from_text("constant c=2", circle2)
        assert constant.coefficient((0,))[0, 0] == 2.0

    def test_cosine_mode(self, builder, circle2):
        F = builder.build_field_from_text("single_mode k=1", circle2)
        assert plancherel_norm(F) == pytest.approx(1.0, abs=1e-15)
        assert F.coefficient((1,))[0, 0] == pytest.approx(1 / math.sqrt(2))
        assert F.coefficient((-1,))[0, 0] == pytest.approx(1 / math.sqrt(2))

    def test_zero_wave_vector_is_constant(self, builder):
        spec = GroupSpec.torus([1, 2], 2)
        F = builder.build_field_from_text("single_mode k=0,0", spec)
        assert F.max_abs_difference(SpectralField.constant(spec)) == 0.0

    @pytest.mark.parametrize("spec,text", [
        (GroupSpec.su2(2), "single_mode l=1/2"),
        (GroupSpec.su2(2), "single_mode l=1"),
        (GroupSpec.so3(2), "single_mode l=2"),
    ])
    def test_compact_group_modes_are_real_unit_fields(self, builder, spec, text):
        F = builder.build_field_from_text(text, spec)
        assert plancherel_norm(F) == pytest.approx(1.0, abs=1e-14)
        samples = inverse_gft(F, make_grid(spec, 1.0)).samples
        assert np.max(np.abs(samples.imag)) < 1e-13

    def test_random_is_reproducible_and_real(self, builder, su2):
        first = builder.build_field_from_text("random seed=4 decay=2", su2)
        second = builder.build_field_from_text("random seed=4 decay=2", su2)
        assert first.max_abs_difference(second) == 0.0
        samples = inverse_gft(first, make_grid(su2, 1.0)).samples
        assert np.max(np.abs(samples.imag)) < 1e-13

    def test_file_relative_to_base_dir(self, builder, temp_directory, circle2):
        _write_csv(temp_directory / "u1.csv", [("0", 0, 0, 3.0, 0.0)])
        F = builder.build_field_from_text("file u1.csv", circle2)
        assert F.coefficient((0,))[0, 0] == 3.0

    def test_build_cauchy(self, builder, circle2):
        data = builder.build_cauchy(DataBlock(u0="single_mode k=2", u1="constant", epsilon=0.25), circle2)
        assert data.epsilon == 0.25
        assert data.spec == circle2
        assert plancherel_norm(data.u1) == 1.0

    def test_describe_presets(self):
        text = describe_presets()
        for name in ("zero", "constant", "single_mode", "random", "file"):
            assert name in text


class TestRunConfigValidator:
    """Checks that run before any computation."""

    @staticmethod
    def _config(temp_directory, **overrides):
        raw = {
            "experiment": "plancherel_check",
            "group": {"kind": "torus", "radii": [1.0], "bandlimit": 4},
            "output": {"directory": str(temp_directory / "results")},
        }
        raw.update(overrides)
        return RunConfig.model_validate(raw)

    def test_valid(self, test_settings, temp_directory):
        validator = RunConfigValidator(test_settings)
        cfg = self._config(temp_directory)
        assert validator.validate_config(cfg, temp_directory) == (True, [])
        assert validator.validate_output_directory(cfg.output.directory) == (True, [])

    def test_missing_coefficient_file(self, test_settings, temp_directory):
        cfg = self._config(temp_directory, experiment="linear_decay", data={"u0": "file absent.csv"})
        ok, issues = RunConfigValidator(test_settings).validate_config(cfg, temp_directory)
        assert not ok
        assert "does not exist" in issues[0]

    def test_coefficient_file_must_be_csv(self, test_settings, temp_directory):
        (temp_directory / "u0.txt").write_text("rep,k,l,re,im\n")
        cfg = self._config(temp_directory, experiment="linear_decay", data={"u0": "file u0.txt"})
        ok, issues = RunConfigValidator(test_settings).validate_config(cfg, temp_directory)
        assert not ok
        assert "not a CSV" in issues[0]

    def test_grid_size_limit(self, test_settings, temp_directory):
        cfg = self._config(temp_directory, group={"kind": "su2", "bandlimit": 150}, data={"u0": "zero"})
        ok, issues = RunConfigValidator(test_settings).validate_config(cfg, temp_directory)
        assert not ok
        assert "exceeds the limit" in issues[0]

    def test_output_path_is_a_file(self, test_settings, temp_directory):
        target = temp_directory / "taken"
        target.write_text("")
        ok, issues = RunConfigValidator(test_settings).validate_output_directory(target)
        assert not ok
        assert "not a directory" in issues[0]

    def test_raise_for_issues(self, test_settings, temp_directory):
        cfg = self._config(temp_directory, experiment="linear_decay", data={"u0": "file absent.csv"})
        with pytest.raises(ConfigurationError, match="does not exist"):
            RunConfigValidator(test_settings).raise_for_issues(cfg, temp_directory)

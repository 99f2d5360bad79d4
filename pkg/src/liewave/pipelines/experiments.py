"""Experiment pipeline: runs one configured experiment and writes its report."""

import logging
import time
from pathlib import Path
from typing import Callable, Dict, Optional, Union

import numpy as np
import pandas as pd

from .. import __version__
from ..analysis.decay import NORM_NAMES, fit_decay_rate, verify_decay_bounds
from ..analysis.gagliardo_nirenberg import gn_bandlimit_stability, gn_ratio_check, gn_ratio_from_coefficients
from ..analysis.l1_experiment import l1_no_improvement_experiment, linf_chain_check, random_chain_corpus
from ..config.run_config import Experiment, RunConfig, load_run_config
from ..config.settings import LiewaveSettings, PathConfig, get_paths, get_settings
from ..data.presets import InitialDataBuilder
from ..data.validator import RunConfigValidator
from ..solvers.evolution import (
    CauchyData,
    DuhamelOperator,
    SemilinearConfig,
    evolve_homogeneous,
    lipschitz_estimate,
    picard_solve,
    reference_rk4_trajectory,
    theorem1_norms,
)
from ..spectral.group_spectra import Region, enumerate_dual, spectral_gaps
from ..spectral.harmonic import (
    SpectralField,
    forward_gft,
    inverse_gft,
    lq_norm,
    make_grid,
    plancherel_norm,
    random_spectral_field,
    real_projection,
)
from ..spectral.propagator import multiplier_bound_check
from .reporting import ExperimentResult, ReportWriter


class ExperimentPipeline:
    """
    High-level runner for a single experiment.

    Loads and validates the run configuration, builds the initial data,
    dispatches to the experiment and persists the results.
    """

    def __init__(self,
                 run_config: RunConfig,
                 config: Optional[LiewaveSettings] = None,
                 paths: Optional[PathConfig] = None,
                 config_dir: Optional[Union[str, Path]] = None,
                 enable_logging: Optional[bool] = None):
        """
        Initialize the experiment pipeline.

        Args:
            run_config: Parsed run configuration
            config: Process settings (read from the environment if None)
            paths: Path configuration instance (uses default if None)
            config_dir: Directory relative data files are resolved against
            enable_logging: Whether to enable logging (overrides settings)
        """
        self.run_config = run_config
        self.config = config or get_settings()
        self.paths = paths or get_paths()
        self.config_dir = Path(config_dir) if config_dir else Path.cwd()
        if run_config.output.directory is None:
            run_config.output.directory = self.paths.results_dir / run_config.experiment.value

        enable_log = enable_logging if enable_logging is not None else self.config.enable_logging
        if enable_log:
            self._setup_logging()
        else:
            self.logger = logging.getLogger(__name__)
            self.logger.addHandler(logging.NullHandler())

        self.spec = run_config.spec
        self.validator = RunConfigValidator(self.config)
        self.data_builder = InitialDataBuilder(self.config, self.logger, self.config_dir)
        self.writer = ReportWriter(self.config, self.logger)

    @classmethod
    def from_file(cls, config_path: Union[str, Path], **kwargs) -> "ExperimentPipeline":
        config_path = Path(config_path)
        return cls(load_run_config(config_path), config_dir=config_path.parent, **kwargs)

    def _setup_logging(self) -> None:
        """Setup logging configuration."""
        self.paths.create_directories()
        log_file = self.paths.logs_dir / self.config.log_filename

        log_level = getattr(logging, self.config.log_level.upper(), logging.INFO)
        logging.basicConfig(
            level=log_level,
            format='%(asctime)s - %(levelname)s - %(message)s',
            handlers=[
                logging.StreamHandler(),
                logging.FileHandler(log_file)
            ]
        )
        self.logger = logging.getLogger(__name__)

    # ------------------------------------------------------------------
    # Entry points
    # ------------------------------------------------------------------

    def validate(self):
        """Run the file and size checks; returns (is_valid, issues)."""
        ok_config, config_issues = self.validator.validate_config(self.run_config, self.config_dir)
        ok_output, output_issues = self.validator.validate_output_directory(self.run_config.output.directory)
        return ok_config and ok_output, config_issues + output_issues

    def execute(self) -> ExperimentResult:
        """Run the experiment without writing anything."""
        self.validator.raise_for_issues(self.run_config, self.config_dir)
        handlers: Dict[Experiment, Callable[[], ExperimentResult]] = {
            Experiment.PLANCHEREL_CHECK: self._plancherel_check,
            Experiment.LINEAR_DECAY: self._linear_decay,
            Experiment.L1_EXPERIMENT: self._l1_experiment,
            Experiment.SEMILINEAR: self._semilinear,
            Experiment.GN_CHECK: self._gn_check,
            Experiment.MULTIPLIER_CHECK: self._multiplier_check,
        }
        experiment = self.run_config.experiment
        self.logger.info(f"Starting {experiment.value} on {self.spec.describe()}")
        result = handlers[experiment]()
        for name, ok in result.verdicts.items():
            self.logger.info(f"  {name}: {'PASS' if ok else 'FAIL'}")
        return result

    def run(self) -> ExperimentResult:
        """Run the experiment and write report.json plus series files."""
        started = time.perf_counter()
        result = self.execute()
        wall_time = time.perf_counter() - started
        self.writer.write_report(result, self.run_config.output, self.run_config.echo(), __version__, wall_time)
        self.logger.info(f"{self.run_config.experiment.value} finished: {'PASS' if result.passed else 'FAIL'}")
        return result

    # ------------------------------------------------------------------
    # Experiments
    # ------------------------------------------------------------------

    def _plancherel_check(self) -> ExperimentResult:
        analysis = self.run_config.analysis
        grid = make_grid(self.spec, analysis.oversample)
        rng = np.random.default_rng(analysis.seed)
        rows = []
        for i in range(analysis.n_fields):
            F = random_spectral_field(self.spec, rng, analysis.decay)
            samples = inverse_gft(F, grid)
            grid_l2 = lq_norm(samples, 2.0)
            spectral_l2 = plancherel_norm(F)
            roundtrip = forward_gft(samples).max_abs_difference(F)
            rows.append((i, grid_l2, spectral_l2, abs(grid_l2 - spectral_l2), roundtrip))
        frame = pd.DataFrame(rows, columns=["field", "grid_l2", "spectral_l2", "defect", "roundtrip_error"])
        max_defect = float(frame["defect"].max())
        max_roundtrip = float(frame["roundtrip_error"].max())
        return ExperimentResult(
            experiment=Experiment.PLANCHEREL_CHECK.value,
            verdicts={
                "plancherel_identity": max_defect < analysis.tolerance,
                "transform_roundtrip": max_roundtrip < analysis.tolerance,
            },
            summary={"max_defect": max_defect, "max_roundtrip_error": max_roundtrip,
                     "grid_shape": list(grid.shape), "n_fields": analysis.n_fields},
            series={"plancherel": frame},
        )

    def _times(self) -> np.ndarray:
        analysis = self.run_config.analysis
        return np.linspace(0.0, analysis.t_max, analysis.n_times)

    def _linear_decay(self) -> ExperimentResult:
        analysis = self.run_config.analysis
        data = self.data_builder.build_cauchy(self.run_config.data, self.spec)
        times = self._times()
        report = verify_decay_bounds(data, times, analysis.window, analysis.slack, analysis.fit_window)

        verdicts = {f"estimate_{v.name}": v.passed for v in report.verdicts}
        summary = {
            "constants": {v.name: v.constant for v in report.verdicts},
            "data_norms": dict(zip(NORM_NAMES, report.data_norms)),
            "fitted_rates": report.fitted_rates,
            "details": {v.name: v.detail for v in report.verdicts if v.detail},
        }

        # exponential decay of the derivative norms at rate delta1, when no
        # resonant mode adds a polynomial factor
        table = data.u0.table
        if not np.any(table.resonant) and times[-1] >= analysis.fit_window[1]:
            delta1 = float(spectral_gaps(enumerate_dual(self.spec)).delta1)
            summary["delta1"] = delta1
            start = np.searchsorted(times, analysis.fit_window[0])
            for i in range(1, 4):
                if report.norms[start, i] > 1e-12:
                    rate = fit_decay_rate(times, report.norms[:, i], analysis.fit_window)
                    verdicts[f"exponential_rate_{NORM_NAMES[i]}"] = rate >= delta1 - 0.05

        series = {"decay": report.to_frame()}
        if analysis.random_sets:
            rng = np.random.default_rng(analysis.seed)
            rows = []
            for i in range(analysis.random_sets):
                sample = CauchyData(
                    real_projection(random_spectral_field(self.spec, rng, analysis.decay)),
                    real_projection(random_spectral_field(self.spec, rng, analysis.decay)),
                )
                sample_report = verify_decay_bounds(sample, times, analysis.window, analysis.slack,
                                                    analysis.fit_window)
                rows.append([i] + [v.passed for v in sample_report.verdicts]
                            + [v.constant for v in sample_report.verdicts])
            columns = (["set"] + [f"passed{i + 1}" for i in range(4)] + [f"constant{i + 1}" for i in range(4)])
            frame = pd.DataFrame(rows, columns=columns)
            series["random_sets"] = frame
            verdicts["random_sets"] = bool(frame[[f"passed{i + 1}" for i in range(4)]].all().all())

        coefficients = {}
        if self.run_config.output.dump_coefficients:
            for j in range(0, times.size, self.run_config.output.coefficient_stride):
                coefficients[f"u_{j:05d}"] = evolve_homogeneous(data, float(times[j])).u

        return ExperimentResult(Experiment.LINEAR_DECAY.value, verdicts, summary, series, coefficients)

    def _l1_experiment(self) -> ExperimentResult:
        analysis = self.run_config.analysis
        report = l1_no_improvement_experiment(
            self.spec, t_final=analysis.t_max, n_times=analysis.n_times,
            fit_window=analysis.fit_window, tolerance=analysis.tolerance,
        )
        verdicts = dict(report.verdicts)
        series = {"l1_series": pd.DataFrame({
            "t": report.times,
            "l2_with_mean": report.constant_norms,
            "l2_mean_zero": report.mean_zero_norms,
        })}
        summary = {
            "limit": report.limit,
            "final_with_mean": float(report.constant_norms[-1]),
            "final_mean_zero": float(report.mean_zero_norms[-1]),
            "fitted_rate": report.fitted_rate,
            "delta1": report.delta1,
            "details": report.details,
        }
        if analysis.chain_samples:
            corpus = random_chain_corpus(self.spec, analysis.chain_samples, analysis.seed, analysis.decay)
            chain = linf_chain_check(corpus, report.times)
            verdicts["linf_chain"] = chain.passed
            summary["linf_chain_worst_ratio"] = chain.worst_ratio
            series["linf_chain"] = pd.DataFrame({
                "sample": np.arange(len(chain.lhs)), "trivial_mode_sup": chain.lhs, "l1_bound": chain.rhs,
            })
        return ExperimentResult(Experiment.L1_EXPERIMENT.value, verdicts, summary, series)

    def _solver_config(self, T: Optional[float] = None, n_time_steps: Optional[int] = None) -> SemilinearConfig:
        solver = self.run_config.solver
        return SemilinearConfig(
            p=solver.p,
            T=T if T is not None else solver.T,
            n_time_steps=n_time_steps if n_time_steps is not None else solver.n_time_steps,
            picard_tol=solver.picard_tol,
            picard_max_iters=solver.picard_max_iters,
            oversample=self.run_config.resolved_oversample(self.config),
            amplitude_ceiling=self.run_config.resolved_amplitude_ceiling(self.config),
        )

    def _semilinear(self) -> ExperimentResult:
        solver = self.run_config.solver
        data = self.data_builder.build_cauchy(self.run_config.data, self.spec)
        cfg = self._solver_config()
        picard = picard_solve(data, cfg, tau_switch=self.config.tau_switch)

        verdicts = {"picard_converged": picard.converged}
        summary = {
            "iterations": picard.iterations,
            "contraction_factor": picard.contraction_factor,
            "diagnostic": picard.diagnostic,
            "xT_norm": picard.xT_norm,
        }
        norm_rows = [[state.t, *theorem1_norms(state).as_tuple()] for state in picard.trajectory]
        series = {
            "trajectory": pd.DataFrame(norm_rows, columns=["t", "norm1", "norm2", "norm3", "norm4"]),
            "picard_iterations": pd.DataFrame({
                "iteration": np.arange(1, len(picard.distances) + 1), "distance": picard.distances,
            }),
        }

        if picard.converged and solver.compare_rk4:
            reference = reference_rk4_trajectory(data, cfg, substeps=solver.rk4_substeps)
            distance = plancherel_norm(picard.trajectory[-1].u - reference[-1].u)
            summary["rk4_l2_distance_at_T"] = distance
            verdicts["matches_rk4"] = distance < solver.rk4_tolerance

        if picard.converged and solver.halve_T_check:
            half_cfg = self._solver_config(cfg.T / 2, max(1, cfg.n_time_steps // 2))
            half = picard_solve(data, half_cfg, tau_switch=self.config.tau_switch)
            full_lip = lipschitz_estimate(DuhamelOperator(data, cfg, tau_switch=self.config.tau_switch))
            half_lip = lipschitz_estimate(DuhamelOperator(data, half_cfg, tau_switch=self.config.tau_switch))
            ratio = half_lip.constant / full_lip.constant if full_lip.constant > 0 else None
            summary["half_T_contraction_factor"] = half.contraction_factor
            summary["lipschitz_constant"] = full_lip.constant
            summary["half_T_lipschitz_constant"] = half_lip.constant
            summary["lipschitz_ratio_half_T"] = ratio
            verdicts["contraction_linear_in_T"] = ratio is not None and 0.35 <= ratio <= 0.75

        coefficients = {}
        if self.run_config.output.dump_coefficients:
            for j in range(0, len(picard.trajectory), self.run_config.output.coefficient_stride):
                coefficients[f"u_{j:05d}"] = picard.trajectory[j].u
        return ExperimentResult(Experiment.SEMILINEAR.value, verdicts, summary, series, coefficients)

    def _gn_check(self) -> ExperimentResult:
        analysis = self.run_config.analysis
        q = analysis.q
        constant = gn_ratio_from_coefficients(SpectralField.constant(self.spec, 2.5), q)
        stability = gn_bandlimit_stability(
            self.spec, q, n_fields=analysis.n_fields, seed=analysis.seed, decay=analysis.gn_decay,
            factor=analysis.bandlimit_factor, tolerance=analysis.gn_growth_tolerance,
        )
        # scale invariance and the grid-sample check on one random field
        sample_field = real_projection(
            random_spectral_field(self.spec, np.random.default_rng(analysis.seed), analysis.gn_decay)
        )
        ratio = gn_ratio_from_coefficients(sample_field, q).ratio
        scaled = gn_ratio_from_coefficients(sample_field * -3.75, q).ratio
        from_grid = gn_ratio_check(inverse_gft(sample_field, make_grid(self.spec, 2.0)), q,
                                   reference_max=stability.refined.max_ratio,
                                   tolerance=analysis.gn_growth_tolerance)
        verdicts = {
            "constant_ratio_is_one": abs(constant.ratio - 1.0) < 1e-12,
            "scale_invariance": abs(scaled - ratio) <= 1e-12 * max(1.0, ratio),
            "bandlimit_stability": stability.passed,
        }
        summary = {
            "q": q,
            "theta": constant.theta,
            "max_ratio_base": stability.base.max_ratio,
            "max_ratio_refined": stability.refined.max_ratio,
            "growth": stability.growth,
            "refined_bandlimit": stability.refined.spec.bandlimit,
            "grid_sample_ratio": from_grid.ratio,
            "grid_sample_exceeds_corpus_max": from_grid.exceeds_reference,
        }
        series = {"gn_ratios": pd.DataFrame({
            "field": np.arange(len(stability.base.ratios)),
            "ratio_base": stability.base.ratios,
            "ratio_refined": stability.refined.ratios,
        })}
        return ExperimentResult(Experiment.GN_CHECK.value, verdicts, summary, series)

    def _multiplier_check(self) -> ExperimentResult:
        analysis = self.run_config.analysis
        duals = enumerate_dual(self.spec)
        gaps = spectral_gaps(duals)
        by_region: Dict[Region, list] = {}
        for rep in duals:
            by_region.setdefault(rep.region, [])
            if rep.eigenvalue not in by_region[rep.region]:
                by_region[rep.region].append(rep.eigenvalue)
        regions = analysis.regions or sorted(by_region, key=lambda r: r.value)
        times = self._times()

        verdicts, rows, details = {}, [], {}
        for region in regions:
            samples = by_region.get(region)
            if not samples:
                verdicts[f"region_{region.value}"] = False
                details[region.value] = "no eigenvalues of the truncated dual in this region"
                continue
            report = multiplier_bound_check(region, gaps, times, samples, self.config.tau_switch,
                                            analysis.multiplier_tolerance)
            verdicts[f"region_{region.value}"] = report.passed
            if report.issues:
                details[region.value] = "; ".join(report.issues)
            rows.append([region.value, len(samples)] + [report.constants[k] for k in ("k0", "k1", "dk0", "dk1")])
        frame = pd.DataFrame(rows, columns=["region", "n_eigenvalues", "k0", "k1", "dk0", "dk1"])
        summary = {
            "delta1": float(gaps.delta1),
            "delta2": None if gaps.delta2 is None else float(gaps.delta2),
            "delta3": None if gaps.delta3 is None else float(gaps.delta3),
            "details": details,
        }
        return ExperimentResult(Experiment.MULTIPLIER_CHECK.value, verdicts, summary, {"multiplier_constants": frame})

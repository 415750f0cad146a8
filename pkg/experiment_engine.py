"""
Experiment Engine - Reproducible runs of the Hankel-form experiments.

Features:
- ExperimentConfig: template defaults merged with overrides, echoed verbatim
- One runner per subcommand, each returning an ExperimentReport
- Verdicts computed only from tolerances stored in the config
- Optional progress_callback(step, total, message)
- rerun(): re-executes a report from its own config echo

Subcommands:
    hilbert, embed-verify, phi-d, schatten-embed, schur, inequalities, nehari, freeze
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from bohr_arith import bohr_drop, divisor_count, omega
from coefficient_io import read_matrix_csv, read_polynomial_csv
from dirichlet_poly import CharacterPoint, DirichletPolynomial, random_polynomial, slice_polynomial
from experiment_templates import ExperimentTemplateRegistry
from hankel_spectra import (
    IndexSetSpec,
    Symbol,
    bilinear_eval,
    build_hankel,
    embed_matrix,
    frobenius_via_divisors,
    operator_norm,
    phi_d_symbol,
    schatten_norm,
    schur_apply,
    spectral_norm,
    svd_result,
    symbol_from_analytic,
)
from hardy_mc import (
    hardy_homog_sum,
    hardy_inequality_1d,
    helson_lower,
    mc_hp_norm,
    nested_hp_norm,
    slice_hp_norm,
)
from hilbert_kernels import (
    canonical_variant,
    hilbert_matrix,
    hilbert_operator,
    nehari_symbol_coefficients,
    nehari_symbol_sup,
)
from report_manager import ExperimentReport
from utils import fixture_value, save_fixtures
from weight_patterns import WeightPattern, bennett_tails, schur_multiplier_search

_logger = logging.getLogger(__name__)

SVD_MAX_N = 4000
MATFREE_MAX_N = 20000
MAX_EMBED_SIZE = 6

SCHUR_PATTERNS = ("homog_mask_all_m", "skew_log_nonneg", "skew_radial_embed", "bennett_tails", "multiplier_search")


class ExperimentError(ValueError):
    """Exception raised for invalid experiment configurations."""
    pass


@dataclass
class ExperimentConfig:
    """
    Complete configuration of one run.

    Attributes:
        command: Subcommand name.
        params: Numeric and categorical parameters.
        tolerances: Verdict tolerances.
        output: Primary output path, if any.
        formats: Export formats.
    """
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    output: Optional[str] = None
    formats: List[str] = field(default_factory=lambda: ["json"])

    @classmethod
    def from_template(cls, command: str, overrides: Optional[Dict[str, Any]] = None,
                      output: Optional[str] = None, formats: Optional[List[str]] = None) -> "ExperimentConfig":
        """
        Merge overrides over the template defaults of a subcommand.

        Args:
            command: Subcommand name.
            overrides: Parameter overrides; None values are ignored.
            output: Primary output path.
            formats: Export formats.

        Raises:
            ExperimentError: If the subcommand has no template or an override is unknown.
        """
        template = ExperimentTemplateRegistry.get(command)
        if template is None:
            raise ExperimentError(f"Unknown subcommand: {command}")
        params = dict(template.defaults)
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key not in params:
                raise ExperimentError(f"Parameter '{key}' does not apply to {command}")
            params[key] = value
        return cls(command, params, dict(template.tolerances), output, list(formats or ["json"]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": dict(self.params),
            "tolerances": dict(self.tolerances),
            "output": self.output,
            "formats": list(self.formats),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        return cls(
            command=data["command"],
            params=dict(data.get("params", {})),
            tolerances=dict(data.get("tolerances", {})),
            output=data.get("output"),
            formats=list(data.get("formats", ["json"])),
        )


def _random_complex(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _random_symbol(rng: np.random.Generator, bound: int, terms: int, nonnegative: bool = False) -> Symbol:
    support = rng.choice(np.arange(1, bound + 1), size=min(terms, bound), replace=False)
    if nonnegative:
        values = rng.random(support.size)
    else:
        values = rng.standard_normal(support.size) + 1j * rng.standard_normal(support.size)
    return Symbol(DirichletPolynomial(dict(zip(support.tolist(), values))))


def _smooth_support(d: int, max_omega: int) -> List[int]:
    """All integers with prime factors among p_1..p_d and Omega <= max_omega."""
    found = []
    for kappa in itertools.product(range(max_omega + 1), repeat=d):
        if sum(kappa) <= max_omega:
            found.append(bohr_drop(kappa))
    return sorted(found)


class ExperimentEngine:
    """
    Runs experiments from an ExperimentConfig.

    Every runner returns a finished ExperimentReport whose config is the
    full config echo of the run.
    """

    def __init__(self, progress_callback: Optional[Callable[[int, int, str], None]] = None,
                 workers: int = 1):
        """
        Initialize the engine.

        Args:
            progress_callback: Optional callback function(step, total, message).
            workers: Threads for Monte Carlo chunk evaluation.
        """
        self.progress_callback = progress_callback
        self.workers = max(1, int(workers))
        self._runners: Dict[str, Callable[[ExperimentConfig], ExperimentReport]] = {
            "hilbert": self.run_hilbert,
            "embed-verify": self.run_embed_verify,
            "phi-d": self.run_phi_d,
            "schatten-embed": self.run_schatten_embed,
            "schur": self.run_schur,
            "inequalities": self.run_inequalities,
            "nehari": self.run_nehari,
            "freeze": self.freeze,
        }

    def _progress(self, step: int, total: int, message: str) -> None:
        _logger.info("[%d/%d] %s", step, total, message)
        if self.progress_callback:
            self.progress_callback(step, total, message)

    def run(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Dispatch a config to its runner.

        Raises:
            ExperimentError: On an unknown subcommand or invalid parameters.
        """
        runner = self._runners.get(config.command)
        if runner is None:
            raise ExperimentError(f"Unknown subcommand: {config.command}")
        _logger.info("Running %s with %s", config.command, config.params)
        report = runner(config).finish()
        _logger.info("%s finished in %.3f s: %d/%d verdicts passed", config.command, report.duration_seconds,
                     len(report.verdicts) - len(report.failed_verdicts()), len(report.verdicts))
        return report

    def rerun(self, report: ExperimentReport) -> ExperimentReport:
        """Re-execute a report from its config echo."""
        return self.run(ExperimentConfig.from_dict(report.config))

    # ------------------------------------------------------------------
    # hilbert
    # ------------------------------------------------------------------

    def run_hilbert(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Truncated spectral norms of a Hilbert-type kernel along an increasing N list.

        Verdicts: nondecreasing in N; <= pi + margin except for `quehilbert`,
        whose full-index norms are only lower bounds; convergence in matfree mode;
        agreement with the frozen `mult_hilbert_<N>` fixture where one exists.
        Each row carries the norm record of SpectralResult.to_dict().
        """
        p, tol = config.params, config.tolerances
        variant = canonical_variant(p["variant"])
        n_list = [int(n) for n in p["n"]]
        mode = p["mode"]
        if mode not in ("svd", "matfree"):
            raise ExperimentError(f"Unknown mode: {mode}")
        if any(b <= a for a, b in zip(n_list, n_list[1:])):
            raise ExperimentError(f"N list must be strictly increasing: {n_list}")
        if mode == "svd" and max(n_list) > SVD_MAX_N:
            raise ExperimentError(f"svd mode is limited to N <= {SVD_MAX_N}; use --mode matfree")
        if mode == "matfree" and max(n_list) > MATFREE_MAX_N:
            raise ExperimentError(f"matfree mode is limited to N <= {MATFREE_MAX_N}")

        report = ExperimentReport("hilbert", config.to_dict())
        values = []
        for step, N in enumerate(n_list, start=1):
            self._progress(step, len(n_list), f"{variant} N={N} ({mode})")
            if mode == "svd":
                result = svd_result(hilbert_matrix(variant, N), variant=variant, N=N)
            else:
                result = spectral_norm(hilbert_operator(variant, N), tol=p["tol"], max_iter=p["max_iter"],
                                       seed=p["seed"])
                result.parameters.update(variant=variant, N=N)
                report.add_verdict("converged", result.converged, result.residual, p["tol"], p["tol"], f"N={N}")
            value = result.value
            values.append(value)
            report.add_row(variant=variant, N=N, mode=mode, pi_gap=math.pi - value, **result.to_dict())
            if variant != "quehilbert":
                report.check_le("norm <= pi", value, math.pi, tol["pi_margin"], f"N={N}")
            fixture = fixture_value(f"mult_hilbert_{N}") if variant == "mult" else None
            if fixture is not None:
                report.check_close("matches frozen fixture", value, fixture["value"], fixture["tolerance"], f"N={N}")
        for (n_a, a), (n_b, b) in zip(zip(n_list, values), zip(n_list[1:], values[1:])):
            report.check_le("nondecreasing in N", a, b, tol["monotone_slack"], f"N={n_a}->{n_b}")
        return report

    # ------------------------------------------------------------------
    # embed-verify
    # ------------------------------------------------------------------

    def _embedding_row(self, report: ExperimentReport, C: np.ndarray, label: str, power_tol: float,
                       tol: Dict[str, float], matrix_out: Optional[str] = None) -> None:
        symbol = embed_matrix(C)
        norm_c = operator_norm(C)
        s2 = float(np.linalg.norm(C))
        M0 = build_hankel(symbol, IndexSetSpec.divisor_closed(2))
        restricted = spectral_norm(M0, tol=power_tol)
        full = operator_norm(build_hankel(symbol, IndexSetSpec.divisor_closed(1)))
        row = dict(trial=label, rows=C.shape[0], cols=C.shape[1], norm_c=norm_c, s2_c=s2,
                   restricted_norm=restricted.value, full_norm=full,
                   h2_symbol=s2, restricted_converged=restricted.converged)
        if matrix_out:
            row.update(m0_csv=M0.to_csv(matrix_out), m0_index_set=list(M0.index_set))
            _logger.info("Wrote the restricted matrix of %s to %s", label, matrix_out)
        report.add_row(**row)
        report.check_close("restricted norm = ||C||", restricted.value, norm_c, tol["exact"], label)
        report.check_le("||C||_S2 <= full norm", s2, full, tol["sandwich"], label)
        report.check_le("full norm <= 4 ||C||_S2", full, 4.0 * s2, tol["sandwich"], label)

    def run_embed_verify(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Embedding exactness and the S_2 sandwich on random matrices, the
        identity family I_K, and an optional matrix read from CSV.

        With `matrix_out`, the restricted matrix M0 of the CSV matrix (or of
        the largest identity when no CSV is given) is written in the matrix
        CSV format.
        """
        p, tol = config.params, config.tolerances
        sizes = [int(k) for k in p["n"]]
        if not sizes or max(sizes) > MAX_EMBED_SIZE or min(sizes) < 1:
            raise ExperimentError(f"Embedding sizes must lie in 1..{MAX_EMBED_SIZE}, got {sizes}")
        C_file = None
        if p.get("matrix"):
            C_file = read_matrix_csv(p["matrix"])
            if max(C_file.shape) > MAX_EMBED_SIZE:
                raise ExperimentError(f"{p['matrix']}: matrices up to {MAX_EMBED_SIZE}x{MAX_EMBED_SIZE} "
                                      f"can be embedded, got {C_file.shape[0]}x{C_file.shape[1]}")
        matrix_out = p.get("matrix_out")
        rng = np.random.default_rng(p["seed"])
        report = ExperimentReport("embed-verify", config.to_dict())
        trials = int(p["trials"])
        total = trials + len(sizes) + (1 if C_file is not None else 0)

        for t in range(trials):
            K = sizes[t % len(sizes)]
            self._progress(t + 1, total, f"random {K}x{K} trial {t}")
            self._embedding_row(report, _random_complex(rng, K, K), f"random#{t}", p["tol"], tol)

        for i, K in enumerate(sizes, start=1):
            self._progress(trials + i, total, f"identity I_{K}")
            out = matrix_out if C_file is None and K == max(sizes) else None
            self._embedding_row(report, np.eye(K), f"identity{K}", p["tol"], tol, out)

        if C_file is not None:
            self._progress(total, total, f"matrix from {p['matrix']}")
            self._embedding_row(report, C_file, "csv", p["tol"], tol, matrix_out)
        return report

    # ------------------------------------------------------------------
    # phi-d
    # ------------------------------------------------------------------

    def run_phi_d(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Hankel norm 2^{d/2}, pairing 2^d and H^1 norm (4/pi)^d of phi_d, and
        the H^1-functional lower bound 2^d / ||phi_d||_1 against the Hankel norm.
        """
        p, tol = config.params, config.tolerances
        d_list = [int(d) for d in p["d"]]
        if not d_list or min(d_list) < 1 or max(d_list) > 4:
            raise ExperimentError(f"phi-d supports 1 <= d <= 4, got {d_list}")
        report = ExperimentReport("phi-d", config.to_dict())
        one = DirichletPolynomial.constant(1.0)
        for step, d in enumerate(d_list, start=1):
            self._progress(step, len(d_list), f"phi_{d}")
            phi = phi_d_symbol(d)
            M = build_hankel(symbol_from_analytic(phi), IndexSetSpec.divisor_closed(1))
            norm = spectral_norm(M, tol=p["tol"])
            pairing = bilinear_eval(M, phi, one)
            row = dict(d=d, hankel_norm=norm.value, expected_norm=2.0 ** (d / 2),
                       pairing=pairing.real, expected_pairing=2.0 ** d)
            report.check_close("Hankel norm = 2^(d/2)", norm.value, 2.0 ** (d / 2), tol["norm"], f"d={d}")
            report.check_close("pairing = 2^d", abs(pairing - 2.0 ** d), 0.0, tol["pairing"], f"d={d}")
            if d <= int(p["mc_max_d"]):
                h1 = mc_hp_norm(phi, 1.0, int(p["samples"]), int(p["seed"]), self.workers)
                expected = (4.0 / math.pi) ** d
                functional = 2.0 ** d / h1.upper(tol["sigmas"])
                row.update(h1=h1.mean, h1_stderr=h1.stderr, expected_h1=expected,
                           functional_bound=2.0 ** d / h1.mean, expected_functional=(math.pi / 2) ** d)
                report.add_verdict("H1 norm = (4/pi)^d", h1.agrees_with(expected, tol["sigmas"]),
                                   h1.mean, expected, tol["sigmas"] * h1.stderr, f"d={d}")
                report.add_verdict("functional bound > Hankel norm", functional > norm.value,
                                   functional, norm.value, None, f"d={d}")
            report.add_row(**row)
        return report

    # ------------------------------------------------------------------
    # schatten-embed
    # ------------------------------------------------------------------

    def run_schatten_embed(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Doubling ||M0||_{S_p}^p = 2 ||C||_{S_p}^p on random C, the divisor-count
        Frobenius identity, Helson's d(n) - 2 >= d(n)/3 on the support, and the
        S_2 growth of diagonal embeddings diag(k^-alpha).
        """
        p, tol = config.params, config.tolerances
        p_list = [float(x) for x in p["p"]]
        K = int(p["n"][0])
        trials = int(p["trials"])
        diag_sizes = [int(s) for s in p["diag_sizes"]]
        rng = np.random.default_rng(p["seed"])
        report = ExperimentReport("schatten-embed", config.to_dict())
        total = trials + len(diag_sizes)

        for t in range(trials):
            self._progress(t + 1, total, f"random {K}x{K} trial {t}")
            C = _random_complex(rng, K, K)
            symbol = embed_matrix(C)
            M0 = build_hankel(symbol, IndexSetSpec.divisor_closed(2))
            for exponent in p_list:
                lhs = schatten_norm(M0, exponent) ** exponent
                rhs = 2.0 * schatten_norm(C, exponent) ** exponent
                report.add_row(trial=t, p=exponent, schatten_m0_pow=lhs, twice_schatten_c_pow=rhs)
                report.check_close("S_p(M0)^p = 2 S_p(C)^p", lhs / rhs, 1.0, tol["doubling"],
                                   f"trial={t} p={exponent:g}")
            frob = frobenius_via_divisors(symbol)
            report.check_close("divisor Frobenius = sqrt(2) ||C||_S2", frob, math.sqrt(2.0) * np.linalg.norm(C),
                               tol["frobenius"], f"trial={t}")
            helson_ok = all(divisor_count(n) - 2 >= divisor_count(n) / 3 for n in symbol.support)
            report.add_verdict("d(n) - 2 >= d(n)/3 on support", helson_ok, detail=f"trial={t}")

        # general symbols on {n <= bound : Omega(n) >= 2}
        candidates = [n for n in range(4, int(p["symbol_bound"]) + 1) if omega(n) >= 2]
        for t in range(2 * trials):
            support = rng.choice(candidates, size=min(10, len(candidates)), replace=False).tolist()
            values = rng.standard_normal(len(support)) + 1j * rng.standard_normal(len(support))
            symbol = Symbol(DirichletPolynomial(dict(zip(support, values))))
            s2 = schatten_norm(build_hankel(symbol, IndexSetSpec.divisor_closed(2)), 2.0)
            frob = frobenius_via_divisors(symbol)
            report.add_row(family="omega>=2", trial=t, s2=s2, frobenius_via_divisors=frob)
            report.check_close("S_2(M0) = divisor Frobenius", s2, frob, tol["frobenius"], f"symbol={t}")
            helson_ok = all(divisor_count(n) - 2 >= divisor_count(n) / 3 for n in symbol.support)
            report.add_verdict("d(n) - 2 >= d(n)/3 on support", helson_ok, detail=f"symbol={t}")

        alpha = float(p["alpha"])
        q = 1.0 / alpha + 1.0
        for i, size in enumerate(diag_sizes, start=1):
            self._progress(trials + i, total, f"diagonal k^-{alpha:g}, K={size}")
            ks = np.arange(1, size + 1, dtype=float)
            symbol = embed_matrix(np.diag(ks ** -alpha))
            s2_squared = frobenius_via_divisors(symbol) ** 2
            oracle = 2.0 * math.fsum(ks ** (-2 * alpha))
            sq_pow = 2.0 * math.fsum(ks ** (-q * alpha))
            report.add_row(family="diagonal", K=size, alpha=alpha, s2_squared=s2_squared, oracle=oracle,
                           growth_over_2logK=s2_squared / (2.0 * math.log(size)) if size > 1 else None,
                           q=q, sq_pow=sq_pow)
            report.check_close("S_2(M0)^2 = 2 sum k^(-2 alpha)", s2_squared / oracle, 1.0, tol["doubling"], f"K={size}")
        return report

    # ------------------------------------------------------------------
    # schur
    # ------------------------------------------------------------------

    def run_schur(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Schur-multiplier experiments selected by `pattern`.

        homog_mask_all_m:  masked norm <= unmasked norm at every level
        skew_log_nonneg:   skew_log on nonnegative symbols does not increase the norm
        skew_radial_embed: skew_radial halves restricted embedded matrices entrywise
        bennett_tails:     iterated tails of the embedded skew_log weights
        multiplier_search: nondecreasing lower bounds for ||W o C|| / ||C||
        """
        p, tol = config.params, config.tolerances
        pattern = p["pattern"]
        if pattern not in SCHUR_PATTERNS:
            raise ExperimentError(f"Unknown Schur pattern: {pattern}")
        report = ExperimentReport("schur", config.to_dict())
        rng = np.random.default_rng(p["seed"])
        trials = int(p["trials"])
        bound = int(p["support_bound"])

        if pattern == "homog_mask_all_m":
            for t in range(trials):
                self._progress(t + 1, trials, f"homogeneous masks, symbol {t}")
                M = build_hankel(_random_symbol(rng, bound, 8), IndexSetSpec.divisor_closed(1))
                base = operator_norm(M)
                top = max(omega(m) for m in M.index_set)
                for level in range(2 * top + 1):
                    masked = operator_norm(schur_apply(M, WeightPattern.homog_mask(level)))
                    report.add_row(trial=t, level=level, masked=masked, unmasked=base, size=M.size)
                    report.check_le("masked <= unmasked", masked, base, tol["contraction"], f"trial={t} m={level}")
        elif pattern == "skew_log_nonneg":
            for t in range(trials):
                self._progress(t + 1, trials, f"skew_log, nonnegative symbol {t}")
                M = build_hankel(_random_symbol(rng, bound, 8, nonnegative=True), IndexSetSpec.divisor_closed(1))
                base = operator_norm(M)
                skew = operator_norm(schur_apply(M, WeightPattern.skew_log()))
                report.add_row(trial=t, skew=skew, unweighted=base, size=M.size)
                report.check_le("skew_log <= unweighted", skew, base, tol["contraction"], f"trial={t}")
        elif pattern == "skew_radial_embed":
            K = int(p["n"][0])
            for t in range(trials):
                self._progress(t + 1, trials, f"skew_radial on embedded {K}x{K}, trial {t}")
                M0 = build_hankel(embed_matrix(_random_complex(rng, K, K)), IndexSetSpec.divisor_closed(2))
                weighted = schur_apply(M0, WeightPattern.skew_radial())
                deviation = float(np.max(np.abs(weighted - 0.5 * M0.entries)))
                ratio = operator_norm(weighted) / operator_norm(M0)
                report.add_row(trial=t, max_deviation=deviation, norm_ratio=ratio)
                report.check_le("skew_radial = M0 / 2 entrywise", deviation, 0.0, tol["halving"], f"trial={t}")
        elif pattern == "bennett_tails":
            self._progress(1, 1, f"Bennett tails on {p['table_size']} primes")
            tails = bennett_tails(int(p["table_size"]))
            report.add_row(**tails.to_dict())
            report.add_verdict("row tail > 1/2 > column tail", tails.row_tail > 0.5 > tails.column_tail,
                               tails.row_tail, tails.column_tail)
            report.add_verdict("gap >= minimum", tails.gap >= tol["bennett_gap_min"], tails.gap,
                               tol["bennett_gap_min"], tol["bennett_gap_min"])
        else:
            sizes = [int(k) for k in p["n"]]
            for step, K in enumerate(sizes, start=1):
                self._progress(step, len(sizes), f"multiplier lower bounds, K={K}")
                result = schur_multiplier_search(K, int(p["iterations"]), int(p["seed"]))
                for it, ratio in enumerate(result.ratios):
                    report.add_row(K=K, iteration=it, ratio=ratio)
                report.add_verdict("lower bounds nondecreasing", result.is_nondecreasing(tol["monotone_slack"]),
                                   result.lower_bound, None, tol["monotone_slack"], f"K={K}")
        return report

    # ------------------------------------------------------------------
    # inequalities
    # ------------------------------------------------------------------

    def run_inequalities(self, config: ExperimentConfig) -> ExperimentReport:
        """
        Helson's lower bound, the Hardy-homogeneous sum, nested versus direct
        H^p norms, the p = 2 slice identity and the one-variable Hardy
        inequality on random polynomials.

        Random family: complex Gaussian coefficients on a random half of the
        integers with prime factors among p_1..p_d and Omega <= max_omega.
        """
        p, tol = config.params, config.tolerances
        d = int(p["d"][0])
        samples = int(p["samples"])
        trials = int(p["trials"])
        sigmas = tol["sigmas"]
        candidates = _smooth_support(d, int(p["max_omega"]))
        rng = np.random.default_rng(p["seed"])
        report = ExperimentReport("inequalities", config.to_dict())

        polys = [random_polynomial(rng, candidates, density=0.5) for _ in range(trials)]
        if p.get("symbol"):
            polys.append(read_polynomial_csv(p["symbol"]))
        for t, f in enumerate(polys):
            self._progress(t + 1, len(polys), f"inequality trial {t} ({len(f)} terms)")
            seed = int(p["seed"]) + t
            h1 = mc_hp_norm(f, 1.0, samples, seed, self.workers)
            helson = helson_lower(f)
            homog = hardy_homog_sum(f, samples, seed, self.workers)
            report.check_le("Helson lower <= H1 + 3 sigma", helson, h1.upper(sigmas), 0.0, f"trial={t}")
            report.check_le("Hardy homogeneous sum <= pi (H1 + 3 sigma)", homog.mean,
                            math.pi * h1.upper(sigmas), 0.0, f"trial={t}")
            row = dict(trial=t, terms=len(f), h1=h1.mean, h1_stderr=h1.stderr, helson=helson,
                       hardy_homog=homog.mean, hardy_homog_stderr=homog.stderr)

            for exponent in [float(x) for x in p["p"]]:
                direct = mc_hp_norm(f, exponent, samples, seed, self.workers)
                nested = nested_hp_norm(f, exponent, samples, seed=seed, workers=self.workers)
                row[f"direct_p{exponent:g}"] = direct.mean
                row[f"nested_p{exponent:g}"] = nested.mean
                report.add_verdict(f"nested = direct (p={exponent:g})",
                                   nested.agrees_with(direct.mean, sigmas, direct.stderr),
                                   nested.mean, direct.mean, sigmas * math.hypot(nested.stderr, direct.stderr),
                                   f"trial={t}")

            z = CharacterPoint.random(max(f.support_dimension(), 1), rng)
            sliced = slice_polynomial(f, z)
            parseval = math.sqrt(math.fsum(abs(c) ** 2 for c in sliced.coeffs))
            report.check_close("slice p=2 = Parseval", slice_hp_norm(f, 2.0, z), parseval, tol["parseval"],
                               f"trial={t}")
            hardy = hardy_inequality_1d(sliced.coeffs)
            report.add_verdict("1-D Hardy inequality", hardy.holds, hardy.lhs, hardy.rhs, None, f"trial={t}")
            row.update(slice_hardy_lhs=hardy.lhs, slice_hardy_rhs=hardy.rhs)
            report.add_row(**row)

        # f = 2^{-s}: every quantity is exact
        reference = DirichletPolynomial.monomial(2)
        report.add_row(trial="2^-s", terms=1, h1=mc_hp_norm(reference, 1.0, samples).mean,
                       helson=helson_lower(reference), hardy_homog=hardy_homog_sum(reference, samples).mean)
        return report

    # ------------------------------------------------------------------
    # nehari
    # ------------------------------------------------------------------

    def run_nehari(self, config: ExperimentConfig) -> ExperimentReport:
        """Quadrature coefficients of i(pi - theta) against 1/k and the grid sup of |Phi|."""
        p, tol = config.params, config.tolerances
        k_max, grid = int(p["k_max"]), int(p["grid"])
        report = ExperimentReport("nehari", config.to_dict())
        self._progress(1, 1, f"Simpson coefficients, k <= {k_max}, grid {grid}")
        coeffs = nehari_symbol_coefficients(k_max, grid)
        ks = np.arange(1, k_max + 1)
        errors = np.abs(coeffs - 1.0 / ks)
        for k, c, err in zip(ks, coeffs, errors):
            report.add_row(k=int(k), re=c.real, im=c.imag, error=err)
        sup = nehari_symbol_sup(grid)
        report.check_le("max |c_k - 1/k|", float(errors.max()), 0.0, tol["coefficient"])
        report.check_le("max |Im c_k|", float(np.abs(coeffs.imag).max()), 0.0, tol["imaginary"])
        report.check_close("grid sup |Phi| = pi", sup, math.pi, tol["sup"])
        return report

    # ------------------------------------------------------------------
    # freeze
    # ------------------------------------------------------------------

    def freeze(self, config: ExperimentConfig) -> ExperimentReport:
        """Recompute the regression values by their oracles and write the fixture file."""
        p = config.params
        report = ExperimentReport("freeze", config.to_dict())
        values = {}
        n_list = [int(n) for n in p["n"]]
        total = len(n_list) + 1
        for step, N in enumerate(n_list, start=1):
            self._progress(step, total, f"dense SVD of the multiplicative Hilbert matrix, N={N}")
            value = operator_norm(hilbert_matrix("mult", N))
            values[f"mult_hilbert_{N}"] = {
                "value": value,
                "tolerance": 1e-8,
                "oracle": f"largest singular value of the dense multiplicative Hilbert matrix on {{2..{N}}}",
            }
            report.add_row(fixture=f"mult_hilbert_{N}", value=value)
        self._progress(total, total, "Bennett tails")
        tails = bennett_tails(int(p["table_size"]))
        values[f"bennett_gap_{tails.table_size}"] = {
            "value": round(tails.gap, 6),
            "tolerance": 1e-3,
            "oracle": "row tail minus column tail of the embedded skew_log weights",
        }
        report.add_row(fixture=f"bennett_gap_{tails.table_size}", value=tails.gap)
        path = save_fixtures(values, p.get("fixture_path"))
        report.add_row(fixture="path", value=path)
        return report


def run_experiment(command: str, progress_callback=None, workers: int = 1, **overrides) -> ExperimentReport:
    """
    Convenience function to run one experiment with template defaults.

    Args:
        command: Subcommand name.
        progress_callback: Optional callback function(step, total, message).
        workers: Threads for Monte Carlo chunks.
        **overrides: Parameter overrides.

    Returns:
        ExperimentReport: The finished report.
    """
    engine = ExperimentEngine(progress_callback=progress_callback, workers=workers)
    return engine.run(ExperimentConfig.from_template(command, overrides))

"""
Experiment Templates Module - Per-subcommand defaults for the experiment runner.

Each template defines:
- Default parameters (echoed verbatim into every report)
- Verdict tolerances (the only thresholds verdicts may use)
- A one-line description for `--help`

Templates:
- hilbert:        truncated Hilbert-type norms along an N list
- embed-verify:   prime-pair matrix embedding exactness and sandwich
- phi-d:          the phi_d separation family
- schatten-embed: singular-value doubling of embedded matrices
- schur:          Schur-multiplier contraction, halving, Bennett tails, lower-bound search
- inequalities:   Helson, Hardy-homogeneous, nested-norm and 1-D Hardy checks
- nehari:         Fourier coefficients of the bounded Hilbert symbol
- freeze:         recompute regression fixtures
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class ExperimentTemplate:
    """
    Data class representing an experiment template.

    Attributes:
        id: Subcommand name.
        name: Display name.
        description: One-line description.
        defaults: Default parameters.
        tolerances: Verdict tolerances.
    """
    id: str
    name: str
    description: str
    defaults: Dict[str, Any] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)


# ============================================================================
# TEMPLATE DEFINITIONS
# ============================================================================

HILBERT = ExperimentTemplate(
    id="hilbert",
    name="Hilbert constant",
    description="Truncated norms of multiplicative and additive Hilbert matrices",
    defaults={"variant": "mult", "n": [10, 100, 1000], "mode": "svd", "tol": 1e-10,
              "max_iter": 100_000, "seed": 0},
    tolerances={"pi_margin": 1e-9, "monotone_slack": 1e-9},
)

EMBED_VERIFY = ExperimentTemplate(
    id="embed-verify",
    name="Matrix embedding",
    description="Restricted and full form norms of embedded matrices against the SVD of C",
    defaults={"n": [1, 2, 3, 4, 5, 6], "trials": 20, "seed": 0, "tol": 1e-13, "matrix": None,
              "matrix_out": None},
    tolerances={"exact": 1e-8, "sandwich": 1e-9},
)

PHI_D = ExperimentTemplate(
    id="phi-d",
    name="phi_d separation",
    description="Hankel norm, H^1 norm and pairing of the phi_d family",
    defaults={"d": [1, 2, 3, 4], "samples": 1_000_000, "mc_max_d": 3, "seed": 0, "tol": 1e-13},
    tolerances={"norm": 1e-8, "pairing": 1e-12, "sigmas": 3.0},
)

SCHATTEN_EMBED = ExperimentTemplate(
    id="schatten-embed",
    name="Schatten doubling",
    description="S_p norms of the restricted matrix of an embedded C versus those of C",
    defaults={"p": [1.0, 2.0, 3.0, 4.0], "trials": 10, "n": [4], "seed": 0,
              "alpha": 0.5, "diag_sizes": [10, 100, 1000], "symbol_bound": 500},
    tolerances={"doubling": 1e-8, "frobenius": 1e-10},
)

SCHUR = ExperimentTemplate(
    id="schur",
    name="Schur multipliers",
    description="Contraction, halving, Bennett tails and multiplier lower bounds",
    defaults={"pattern": "homog_mask_all_m", "trials": 50, "seed": 0, "tol": 1e-13,
              "support_bound": 200, "table_size": 10_000, "n": [8], "iterations": 50},
    tolerances={"contraction": 1e-10, "halving": 0.0, "bennett_gap_min": 0.4, "monotone_slack": 1e-12},
)

INEQUALITIES = ExperimentTemplate(
    id="inequalities",
    name="Inequality suite",
    description="Helson, Hardy-homogeneous, nested-norm and one-variable Hardy checks",
    defaults={"samples": 200_000, "trials": 20, "seed": 0, "d": [3], "p": [1.0, 3.0],
              "max_omega": 3, "symbol": None},
    tolerances={"sigmas": 3.0, "parseval": 1e-12},
)

NEHARI = ExperimentTemplate(
    id="nehari",
    name="Nehari symbol",
    description="Fourier coefficients of i(pi - theta) against 1/k",
    defaults={"k_max": 100, "grid": 1 << 16},
    tolerances={"coefficient": 1e-8, "imaginary": 1e-10, "sup": 1e-6},
)

FREEZE = ExperimentTemplate(
    id="freeze",
    name="Freeze fixtures",
    description="Recompute regression values by their oracles and write the fixture file",
    defaults={"n": [1000], "table_size": 10_000, "fixture_path": None},
    tolerances={},
)


# ============================================================================
# TEMPLATE REGISTRY
# ============================================================================

class ExperimentTemplateRegistry:
    """
    Registry for managing and accessing experiment templates.
    """

    _templates: Dict[str, ExperimentTemplate] = {}

    @classmethod
    def register(cls, template: ExperimentTemplate) -> None:
        """Register an experiment template."""
        cls._templates[template.id] = template

    @classmethod
    def get(cls, template_id: str) -> Optional[ExperimentTemplate]:
        """Get a template by ID."""
        return cls._templates.get(template_id)

    @classmethod
    def get_all(cls) -> List[ExperimentTemplate]:
        return list(cls._templates.values())

    @classmethod
    def get_ids(cls) -> List[str]:
        return list(cls._templates.keys())


ExperimentTemplateRegistry.register(HILBERT)
ExperimentTemplateRegistry.register(EMBED_VERIFY)
ExperimentTemplateRegistry.register(PHI_D)
ExperimentTemplateRegistry.register(SCHATTEN_EMBED)
ExperimentTemplateRegistry.register(SCHUR)
ExperimentTemplateRegistry.register(INEQUALITIES)
ExperimentTemplateRegistry.register(NEHARI)
ExperimentTemplateRegistry.register(FREEZE)


def get_template(template_id: str) -> Optional[ExperimentTemplate]:
    """
    Get an experiment template by ID.

    Args:
        template_id: The subcommand name.

    Returns:
        ExperimentTemplate or None if not found.
    """
    return ExperimentTemplateRegistry.get(template_id)


def get_template_ids() -> List[str]:
    """Get all subcommand names with a template."""
    return ExperimentTemplateRegistry.get_ids()

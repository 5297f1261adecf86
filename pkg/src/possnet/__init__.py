"""Possibilistic-necessity networks, weighted knowledge bases and fuzzy necessities."""
from importlib import resources
from pathlib import Path

from .fuzzy import (
    FuzzyCell,
    FuzzyNetwork,
    FuzzyNode,
    TriangularDegree,
    defuzzified_network,
    defuzzify,
    fuzzy_joint,
    fuzzy_kb_necessity,
    membership,
    validate_fuzzy,
)
from .kb import (
    AverageKB,
    WeightedFormula,
    equivalent,
    is_subsumed,
    kb_necessity_distribution,
    kb_possibility_distribution,
    normalize_kb,
)
from .logic import (
    BOTTOM,
    TOP,
    Clause,
    Literal,
    Variable,
    World,
    enumerate_worlds,
    evaluate,
    models,
    parse_formula,
)
from .measures import WorldDistribution, guaranteed_degree, necessity_by_duality, possibility_of
from .network import (
    ELSE,
    ConditionalCell,
    NetworkNode,
    PossibilisticNetwork,
    joint_average,
    joint_table,
    local_degrees,
    query,
    validate,
)
from .transform import LocalKB, LocalKBSet, kb_to_network, network_to_kb, roundtrip_report

__version__ = "0.1.0"

__all__ = [
    "AverageKB",
    "BOTTOM",
    "Clause",
    "ConditionalCell",
    "ELSE",
    "FuzzyCell",
    "FuzzyNetwork",
    "FuzzyNode",
    "Literal",
    "LocalKB",
    "LocalKBSet",
    "NetworkNode",
    "PossibilisticNetwork",
    "TOP",
    "TriangularDegree",
    "Variable",
    "WeightedFormula",
    "World",
    "WorldDistribution",
    "defuzzified_network",
    "defuzzify",
    "enumerate_worlds",
    "equivalent",
    "evaluate",
    "fuzzy_joint",
    "fuzzy_kb_necessity",
    "guaranteed_degree",
    "is_subsumed",
    "joint_average",
    "joint_table",
    "kb_necessity_distribution",
    "kb_possibility_distribution",
    "kb_to_network",
    "local_degrees",
    "membership",
    "models",
    "necessity_by_duality",
    "network_to_kb",
    "normalize_kb",
    "parse_formula",
    "possibility_of",
    "query",
    "roundtrip_report",
    "validate",
    "validate_fuzzy",
    "load",
    "sample_path",
    "SAMPLES",
]

SAMPLES = ("table1.pnet", "table1.pkb", "metastatic.pnet", "table3.pfnet")


def sample_path(name: str) -> Path:
    """Filesystem path of a bundled sample file (see ``SAMPLES``)."""
    if name not in SAMPLES:
        raise KeyError(f"no sample named {name!r}; available: {', '.join(SAMPLES)}")
    return Path(str(resources.files(__package__) / "data" / name))


def load(path):
    """Parse a .pnet, .pfnet or .pkb file into its value."""
    from .formats import load_document

    return load_document(path).value

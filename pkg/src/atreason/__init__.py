"""Reasoning about action domains with defeasible rules via prioritized logic programs."""

from importlib import resources
from pathlib import Path

from .analyzer import (
    AnalysisReport,
    analyze,
    complementary_pairs,
    fluent_sets,
    is_normal,
    mutually_exclusive,
    o_monotonic_sufficient,
    temporal_definiteness,
)
from .asp import AnswerSet, ConstraintViolated, answer_sets, gl_transform, is_locally_stratified, least_model, positive_form
from .domain import DomainDescription, DomainError, ValueQuery, load_domain, parse_domain, parse_query, validate_domain
from .logic import (
    PLP,
    NotWellFormed,
    Literal,
    LogicError,
    CycleInOrder,
    ParseError,
    Program,
    Rule,
    check_well_formed,
    close_order,
    ground_instantiate,
    lit,
    parse_plp,
    parse_program,
    render_plp,
)
from .plp import NoAnswerSet, is_defeated, partition, plp_answer_sets, plp_entails, reducts
from .reasoner import NoModel, Reasoner, Undefined, enumerate_models, entails, explain_change, initial_states, transition
from .translate import apply_preferences, translate, translate_at0, translate_at1, translate_at2

__version__ = "0.1.0"


def bundled(name: str) -> Path:
    """Path of a bundled example domain or program, e.g. ``bundled("tweety.plp")``."""
    return Path(str(resources.files(__name__) / "data" / name))


from .order_core import build_context, build_poset, MedianContext
from .relation_spaces import Flavor, GroundSet, enumerate_space
from .agg_rules import evaluate, tabulate, RuleSpec, RuleTable
from .prop_checkers import CheckReport, axiom, check

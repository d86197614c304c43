"""Navlog constant types."""


class WitnessReason(object):
    """Why a path refutes an until objective."""
    LEFT_CORRIDOR = "LeftCorridor"
    DEAD_END = "DeadEnd"
    NEVER_REACHES = "NeverReaches"

    ALL = (LEFT_CORRIDOR, DEAD_END, NEVER_REACHES)


class CheckMode(object):
    """Strategy class a navigability query is decided for."""
    AMNESIC = "amnesic"
    RECALL = "recall"

    ALL = (AMNESIC, RECALL)


class CellVerdict(object):
    """Navigability table cell."""
    AMNESIC = "a"
    RECALL = "r"
    NONE = "-"


class RuleName(object):
    """Rules of the proof system, plus the pseudo-rule for assumptions."""
    ASSUMPTION = "Assumption"
    REFLEXIVITY = "Reflexivity"
    AUGMENTATION = "Augmentation"
    TRANSITIVITY = "Transitivity"
    EARLY_BIRD = "Early Bird"
    TRIVIAL_PATH = "Trivial Path"
    PATH_TO_NOWHERE = "Path to Nowhere"


class LemmaName(object):
    """Admissible lemmas swept over a saturated closure."""
    REMOVE_LEFT = "remove-left"
    ADD_DOWN = "add-down"
    ADD_RIGHT = "add-right"
    REMOVE_VOID = "remove-void"
    SUPER_TRANSITIVITY = "super-transitivity"
    VOID_UNION = "void-union"
    CORRIDOR_CAP_VALID = "corridor-cap-valid"
    TARGET_CAP_VALID = "target-cap-valid"

    ALL = (
        REMOVE_LEFT,
        ADD_DOWN,
        ADD_RIGHT,
        REMOVE_VOID,
        SUPER_TRANSITIVITY,
        VOID_UNION,
        CORRIDOR_CAP_VALID,
        TARGET_CAP_VALID)


class FuzzProperty(object):
    """Properties exercised by the soundness fuzzer."""
    REFLEXIVITY = "reflexivity"
    AUGMENTATION = "augmentation"
    TRANSITIVITY = "transitivity"
    EARLY_BIRD = "early-bird"
    TRIVIAL_PATH = "trivial-path"
    PATH_TO_NOWHERE = "path-to-nowhere"
    SWITCH_S = "switch-s"
    TRANSITIVITY_COMPOSITION = "transitivity-composition"
    AMNESIC_IMPLIES_RECALL = "amnesic-implies-recall"
    RECALL_TRANSITIVITY = "recall-transitivity"

    ALL = (
        REFLEXIVITY,
        AUGMENTATION,
        TRANSITIVITY,
        EARLY_BIRD,
        TRIVIAL_PATH,
        PATH_TO_NOWHERE,
        SWITCH_S,
        TRANSITIVITY_COMPOSITION,
        AMNESIC_IMPLIES_RECALL,
        RECALL_TRANSITIVITY)


class ExitStatus(object):
    """Process exit statuses of the command line interface."""
    ANSWERED = 0
    VERDICT_FALSE = 1
    USAGE_ERROR = 2
    INVARIANT_VIOLATION = 3

"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` (used by the CLI's JSON output) and an
optional ``path`` locating the offending node inside a proof tree.
"""


class CKLError(Exception):
    code = "error"

    def __init__(self, message, path=None):
        super().__init__(message)
        self.message = message
        self.path = path

    def __str__(self):
        if self.path is None:
            return self.message
        return f"{self.message} [at {format_path(self.path)}]"


def format_path(path):
    return "/".join(["root", *(str(p) for p in path)])


class ParseError(CKLError):
    code = "parse_error"

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (offset {pos})"
        super().__init__(message)
        self.pos = pos


class UnknownAgent(CKLError):
    code = "unknown_agent"


class NotATautology(CKLError):
    code = "not_a_tautology"


class TooLarge(CKLError):
    code = "too_large"


class BasisViolation(CKLError):
    code = "basis_violation"


class TheoryMismatch(CKLError):
    code = "theory_mismatch"


class ShapeMismatch(CKLError):
    code = "shape_mismatch"


class MissingParameter(CKLError):
    code = "missing_parameter"


class UnknownAxiom(CKLError):
    code = "unknown_axiom"


class MalformedProof(CKLError):
    code = "malformed_proof"


class AgentNotInGroup(CKLError):
    code = "agent_not_in_group"


class AgentOutsideGroup(CKLError):
    code = "agent_outside_group"


class GroupOutsideGroup(CKLError):
    code = "group_outside_group"


class TheoryError(CKLError):
    code = "theory_error"


class ConclusionMismatch(CKLError):
    code = "conclusion_mismatch"

"""Exception hierarchy.  Every error carries a stable ``code`` string."""

from __future__ import annotations


class MetawhitError(Exception):
    code = "error"


class InvalidRank(MetawhitError, ValueError):
    code = "invalid_rank"


class LatticeMismatch(MetawhitError, ValueError):
    code = "lattice_mismatch"


class NotInLattice(MetawhitError, ValueError):
    code = "not_in_lattice"


class CapExceeded(MetawhitError):
    """A configured size guard was hit; the caller should switch mode."""

    code = "cap_exceeded"

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class ZeroVector(MetawhitError, ValueError):
    code = "zero_vector"


class NotDominant(MetawhitError, ValueError):
    code = "not_dominant"


class HypothesisFailed(MetawhitError):
    """A precondition of a theorem-backed operation does not hold."""

    code = "hypothesis_failed"

    def __init__(self, hypothesis: str, detail: str = ""):
        super().__init__(f"hypothesis '{hypothesis}' fails" + (f": {detail}" if detail else ""))
        self.hypothesis = hypothesis
        self.detail = detail


class InvalidWitness(MetawhitError, ValueError):
    code = "invalid_witness"


class InfiniteSet(MetawhitError, ValueError):
    code = "infinite_set"


class WordNotReduced(MetawhitError, ValueError):
    code = "word_not_reduced"


class InternalInconsistency(MetawhitError, AssertionError):
    """A self-check failed; this indicates a bug, never a mathematical branch."""

    code = "internal"

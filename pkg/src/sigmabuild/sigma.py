"""Finiteness-type verdicts for S-arithmetic Borel subgroups.

Characters are coefficient vectors over the basis chi_{alpha,p} indexed by
(simple root, prime).  The forbidden region for the k-th invariant consists of
the classes with non-negative coefficients and support at most k; a character
avoiding the whole non-negative cone is unconditionally good, and the positive
statement for small support is conditional on the prime threshold (the
spherical-opposition thickness bound), below which the verdict is only
conjectural.
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Q0, Q1, feasible_point


class SigmaError(ValueError):
    pass


CERTAIN_IN = "certain-in"
CERTAIN_OUT = "certain-out"
CONJECTURAL_IN = "conjectural-in"


def prime_threshold(family, rank):
    """Smallest prime size for which the positive direction is unconditional.

    Type A_l needs p >= 2^(l-1) (equivalently 2^(n-2) for SL_n), types C_l and
    D_l need p >= 2^(2l-1).
    """
    if family == "A":
        return 2 ** (rank - 1)
    if family in ("C", "D"):
        return 2 ** (2 * rank - 1)
    raise SigmaError(f"unsupported family {family!r}")


@dataclass(frozen=True)
class SigmaContext:
    """Family/rank of the root system, the prime set, and the basis index set."""

    family: str
    rank: int
    primes: tuple

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(sorted(set(self.primes))))
        if self.rank < 1:
            raise SigmaError("rank must be positive")
        if not self.primes:
            raise SigmaError("need at least one prime")

    @property
    def basis(self):
        """Index set Delta^0: pairs (simple root index, prime), ordered."""
        return tuple((i, p) for p in self.primes for i in range(1, self.rank + 1))

    @property
    def dim(self):
        return self.rank * len(self.primes)

    @property
    def sol(self):
        """Whether every prime meets the unconditional threshold."""
        t = prime_threshold(self.family, self.rank)
        return all(p >= t for p in self.primes)

    @classmethod
    def for_sl(cls, n, primes):
        """Context of the Borel subgroup of SL_n (root system A_{n-1})."""
        return cls("A", n - 1, tuple(primes))


@dataclass(frozen=True)
class Verdict:
    kind: str  # certain-in | certain-out | conjectural-in
    justification: str
    witness: tuple = None

    @property
    def certain(self):
        return self.kind != CONJECTURAL_IN


def _as_vector(ctx, chi):
    if len(chi) != ctx.dim:
        raise SigmaError(
            f"character vector has length {len(chi)}, expected {ctx.dim}"
        )
    return tuple(Fraction(c) for c in chi)


def in_delta_k(ctx, chi, k):
    """Non-negative coefficients with at most k of them non-zero."""
    v = _as_vector(ctx, chi)
    if all(c == 0 for c in v):
        raise SigmaError("the zero vector has no class on the character sphere")
    if any(c < 0 for c in v):
        return False
    return sum(1 for c in v if c != 0) <= k


def sigma_verdict(ctx, chi, k):
    """Membership of the character class in the k-th invariant.

    certain-out: the class lies in the forbidden support-k cone.
    certain-in: some coefficient is negative (good in every degree), or the
    support exceeds k and the primes meet the threshold.
    conjectural-in: support exceeds k but the primes are small.
    """
    v = _as_vector(ctx, chi)
    if all(c == 0 for c in v):
        raise SigmaError("the zero vector has no class on the character sphere")
    if in_delta_k(ctx, v, k):
        return Verdict(CERTAIN_OUT, "support-k cone obstruction", witness=v)
    if any(c < 0 for c in v):
        return Verdict(CERTAIN_IN, "mixed signs: outside the non-negative cone")
    if ctx.sol:
        return Verdict(CERTAIN_IN, "support exceeds k; prime threshold met")
    return Verdict(CONJECTURAL_IN, "support exceeds k; prime threshold not met")


def _nonneg_vector_in_span(ctx, generators, max_support):
    """A non-zero, non-negative vector in the span with support <= max_support.

    Exact rational feasibility over each support subset, normalizing one
    coordinate to 1; returns the vector or None.
    """
    from itertools import combinations

    gens = [_as_vector(ctx, g) for g in generators]
    if not gens:
        return None
    m = len(gens)
    d = ctx.dim
    for size in range(1, max_support + 1):
        for subset in combinations(range(d), size):
            inside = set(subset)
            for pivot in subset:
                cons = []
                for i in range(d):
                    row = tuple(g[i] for g in gens)
                    if i == pivot:
                        cons.append((row, "==", Q1))
                    elif i in inside:
                        cons.append((tuple(-x for x in row), "<=", Q0))
                    else:
                        cons.append((row, "==", Q0))
                sol = feasible_point(m, cons)
                if sol is not None:
                    vec = tuple(
                        sum((sol[j] * gens[j][i] for j in range(m)), Q0)
                        for i in range(d)
                    )
                    return vec
    return None


def minimal_bad_support(ctx, generators):
    """The least support of a non-negative non-zero vector in the span, or None."""
    found = _nonneg_vector_in_span(ctx, generators, ctx.dim)
    if found is None:
        return None, None
    support = sum(1 for c in found if c != 0)
    # the first hit of the ascending search already has minimal support
    return support, found


def finiteness_type(ctx, generators, k):
    """Is the subgroup cut out by the given vanishing characters of type F_k?

    `generators` span the space W of characters vanishing on the subgroup
    (which must contain the full unipotent subgroup).  The subgroup is of type
    F_k iff no class of W lies in the forbidden support-k cone; the positive
    direction is conditional on the prime threshold.
    """
    support, witness = minimal_bad_support(ctx, generators)
    if support is None:
        return Verdict(CERTAIN_IN, "no non-negative direction vanishes: type F-infinity")
    if support <= k:
        return Verdict(
            CERTAIN_OUT,
            f"vanishing character with non-negative support {support}",
            witness=witness,
        )
    if ctx.sol:
        return Verdict(
            CERTAIN_IN,
            f"least bad support is {support} > k; prime threshold met",
            witness=witness,
        )
    return Verdict(
        CONJECTURAL_IN,
        f"least bad support is {support} > k; prime threshold not met",
        witness=witness,
    )


def verdict_json(verdict):
    from .linalg import fraction_str

    out = {"kind": verdict.kind, "justification": verdict.justification}
    if verdict.witness is not None:
        out["witness"] = [fraction_str(c) for c in verdict.witness]
    return out

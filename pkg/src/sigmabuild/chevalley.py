"""Exact SL_n matrices: Steinberg generators, Borel splitting, valuations, characters.

Only the standard matrix representation is realized; a root of A_{n-1} is an
off-diagonal position (i, j) and the elementary generator is I + t E_ij.  All
entries are `fractions.Fraction`, so the Steinberg relations and the character
formulas are checked as exact identities.
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Q0, Q1, fraction_str


class ChevalleyError(ValueError):
    pass


class GroupElement:
    """An SL_n matrix over the rationals."""

    __slots__ = ("rows", "n")

    def __init__(self, rows, check_det=True):
        self.rows = tuple(tuple(Fraction(e) for e in row) for row in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ChevalleyError("matrix is not square")
        if check_det and self.det() != 1:
            raise ChevalleyError("determinant must be 1")

    def det(self):
        from .linalg import det

        return det(self.rows)

    def __mul__(self, other):
        from .linalg import matmul

        return GroupElement(matmul(self.rows, other.rows), check_det=False)

    def inv(self):
        from .linalg import inverse

        return GroupElement(inverse(self.rows), check_det=False)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        acc = identity_element(self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"GroupElement({self.rows})"

    def commutator(self, other):
        """[g, h] = g h g^-1 h^-1."""
        return self * other * self.inv() * other.inv()

    # --- shape predicates -----------------------------------------------

    def is_upper_triangular(self):
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i))

    def is_unipotent_upper(self):
        return self.is_upper_triangular() and all(self.rows[i][i] == 1 for i in range(self.n))

    def is_diagonal(self):
        return all(
            self.rows[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j
        )

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(self.n))

    def to_json(self):
        return [[fraction_str(e) for e in row] for row in self.rows]


def identity_element(n):
    return GroupElement(
        tuple(tuple(Q1 if i == j else Q0 for j in range(n)) for i in range(n)),
        check_det=False,
    )


def root_position(n, coeffs):
    """Map a root of A_{n-1} (coefficients over the simples) to its matrix position.

    The positive root alpha_i + ... + alpha_{j-1} corresponds to (i, j) with
    0 <= i < j < n; negatives swap the indices.
    """
    coeffs = tuple(coeffs)
    if len(coeffs) != n - 1:
        raise ChevalleyError("root has wrong rank")
    support = [k for k, c in enumerate(coeffs) if c != 0]
    if not support:
        raise ChevalleyError("zero vector is not a root")
    vals = {coeffs[k] for k in support}
    consecutive = support == list(range(support[0], support[-1] + 1))
    if not consecutive or vals not in ({Fraction(1)}, {Fraction(-1)}):
        raise ChevalleyError(f"{coeffs} is not a root of A_{n-1}")
    i, j = support[0], support[-1] + 1
    if vals == {Fraction(1)}:
        return i, j
    return j, i


def x_elem(n, root, t):
    """Elementary unipotent x_alpha(t) = I + t E_ij."""
    i, j = root_position(n, root)
    rows = [[Q1 if a == b else Q0 for b in range(n)] for a in range(n)]
    rows[i][j] = Fraction(t)
    return GroupElement(rows, check_det=False)


def w_elem(n, root, t):
    """w_alpha(t) = x_alpha(t) x_{-alpha}(-1/t) x_alpha(t); t must be non-zero."""
    t = Fraction(t)
    if t == 0:
        raise ChevalleyError("w_alpha(0) is undefined")
    i, j = root_position(n, root)
    neg = tuple(-c for c in root)
    return x_elem(n, root, t) * x_elem(n, neg, -1 / t) * x_elem(n, root, t)


def h_elem(n, root, t):
    """h_alpha(t) = w_alpha(t) w_alpha(1)^-1; diagonal in the standard representation."""
    t = Fraction(t)
    if t == 0:
        raise ChevalleyError("h_alpha(0) is undefined")
    return w_elem(n, root, t) * w_elem(n, root, 1).inv()


@dataclass(frozen=True)
class BorelDecomposition:
    torus: GroupElement
    unipotent: GroupElement


def borel_decompose(g):
    """Split an upper-triangular g as t * u with t diagonal, u unit-diagonal."""
    if not g.is_upper_triangular():
        raise ChevalleyError("borel_decompose needs an upper-triangular matrix")
    d = g.diagonal()
    if any(x == 0 for x in d):
        raise ChevalleyError("singular diagonal")
    t = GroupElement(
        [[d[i] if i == j else Q0 for j in range(g.n)] for i in range(g.n)],
        check_det=False,
    )
    u = t.inv() * g
    return BorelDecomposition(t, u)


def torus_projection(g):
    """delta: the diagonal part of an upper-triangular matrix."""
    return borel_decompose(g).torus


# --- valuations and S-arithmetic predicates -----------------------------------


def valuation(x, p):
    """The p-adic valuation of a non-zero rational; raises on zero."""
    x = Fraction(x)
    if x == 0:
        raise ChevalleyError("valuation of zero is +infinity")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def strip_primes(n, primes):
    n = abs(n)
    for p in primes:
        while n and n % p == 0:
            n //= p
    return n


def in_o_s(x, primes):
    """Membership in O_S = Z[1/N]: denominator supported on the prime set."""
    x = Fraction(x)
    return strip_primes(x.denominator, primes) == 1


def is_s_unit(x, primes):
    """Units of O_S: +- products of powers of the primes in S."""
    x = Fraction(x)
    if x == 0:
        return False
    return strip_primes(x.numerator, primes) == 1 and strip_primes(x.denominator, primes) == 1


def in_borel_o_s(g, primes):
    """Upper triangular, entries in O_S, diagonal entries S-units."""
    if not g.is_upper_triangular():
        return False
    for i in range(g.n):
        for j in range(i, g.n):
            if not in_o_s(g.rows[i][j], primes):
                return False
    return all(is_s_unit(d, primes) for d in g.diagonal())


# --- characters ---------------------------------------------------------------


class CharacterVec:
    """A character of the Borel group as coefficients over the basis chi_{k,p}.

    Keys are pairs (k, p) with 1 <= k <= n-1 and p in the declared prime set;
    chi_{k,p} evaluates a matrix to v_p(a_{k+1,k+1}) - v_p(a_{k,k}).
    """

    def __init__(self, n, primes, coeffs):
        self.n = int(n)
        self.primes = tuple(sorted(set(int(p) for p in primes)))
        self.coeffs = {}
        for (k, p), lam in coeffs.items():
            lam = Fraction(lam)
            if lam == 0:
                continue
            if not 1 <= k <= self.n - 1:
                raise ChevalleyError(f"simple-root index {k} out of range")
            if p not in self.primes:
                raise ChevalleyError(f"prime {p} not in the declared set")
            self.coeffs[(k, p)] = lam

    def __eq__(self, other):
        return (
            isinstance(other, CharacterVec)
            and (self.n, self.primes) == (other.n, other.primes)
            and self.coeffs == other.coeffs
        )

    def vector(self):
        """Dense coefficient tuple ordered by (p, k)."""
        return tuple(
            self.coeffs.get((k, p), Q0)
            for p in self.primes
            for k in range(1, self.n)
        )

    def scale(self, lam):
        lam = Fraction(lam)
        return CharacterVec(
            self.n, self.primes, {kp: lam * v for kp, v in self.coeffs.items()}
        )

    def __add__(self, other):
        out = dict(self.coeffs)
        for kp, v in other.coeffs.items():
            out[kp] = out.get(kp, Q0) + v
        return CharacterVec(self.n, self.primes, out)

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs


def character_eval(chi, g):
    """Evaluate the character on an upper-triangular S-arithmetic matrix.

    chi_{k,p}((a_ij)) = v_p(a_{k+1,k+1}) - v_p(a_{k,k}); the value of a
    general character is the coefficient-weighted sum.  Vanishes on the
    unipotent subgroup and is additive on products.
    """
    if g.n != chi.n:
        raise ChevalleyError("matrix size does not match the character")
    if not in_borel_o_s(g, chi.primes):
        raise ChevalleyError("matrix is not in the S-arithmetic Borel group")
    d = g.diagonal()
    total = Q0
    for (k, p), lam in chi.coeffs.items():
        total += lam * (valuation(d[k], p) - valuation(d[k - 1], p))
    return total

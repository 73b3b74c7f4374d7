"""Exact rational linear algebra: small dense solves and linear feasibility.

Everything works over `fractions.Fraction`; vectors are tuples, matrices are
tuples of row tuples.  The feasibility routine is a plain Fourier-Motzkin
elimination with witness extraction, which is enough for the low-dimensional
polyhedral questions asked by the alcove and sector predicates.
"""

from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def vec(entries):
    return tuple(Fraction(e) for e in entries)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Q0)


def mat(rows):
    return tuple(tuple(Fraction(e) for e in row) for row in rows)


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def matmul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n):
    return tuple(tuple(Q1 if i == j else Q0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def solve(m, rhs):
    """Solve m x = rhs exactly; returns a tuple or None if singular/inconsistent."""
    n = len(m)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    cols = len(m[0])
    piv_rows = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [e / pv for e in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [e - f * ar for e, ar in zip(aug[i], aug[r])]
        piv_rows.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][cols] != 0:
            return None
    if len(piv_rows) < cols:
        return None
    x = [Q0] * cols
    for i, c in enumerate(piv_rows):
        x[c] = aug[i][cols]
    return tuple(x)


def inverse(m):
    n = len(m)
    cols = tuple(solve(m, tuple(Q1 if i == j else Q0 for i in range(n))) for j in range(n))
    if any(c is None for c in cols):
        raise ValueError("singular matrix")
    return transpose(cols)


def det(m):
    n = len(m)
    a = [list(row) for row in m]
    d = Q1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Q0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        inv = Q1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return d


# --- linear feasibility -----------------------------------------------------
#
# A constraint is a triple (coeffs, rel, rhs) meaning  coeffs . x  REL  rhs,
# with REL one of "==", "<=", "<".


class Infeasible(Exception):
    pass


def _substitute(constraints, var, expr_coeffs, expr_const):
    """Replace x_var by sum(expr_coeffs . x) + expr_const in every constraint."""
    out = []
    for coeffs, rel, rhs in constraints:
        c = coeffs[var]
        if c == 0:
            out.append((coeffs, rel, rhs))
            continue
        new = list(coeffs)
        new[var] = Q0
        for j, e in enumerate(expr_coeffs):
            new[j] += c * e
        out.append((tuple(new), rel, rhs - c * expr_const))
    return out


def feasible_point(n_vars, constraints):
    """Return an exact rational point satisfying all constraints, or None.

    Equalities are eliminated by substitution, the remaining strict/weak
    inequalities by Fourier-Motzkin.  The witness is reconstructed by
    back-substitution, picking midpoints of the feasible intervals.
    """
    constraints = [(vec(c), rel, Fraction(r)) for c, rel, r in constraints]
    subs = []  # (var, coeffs, const) in elimination order

    # eliminate equalities first
    changed = True
    while changed:
        changed = False
        for k, (coeffs, rel, rhs) in enumerate(constraints):
            if rel != "==":
                continue
            var = next((j for j, c in enumerate(coeffs) if c != 0), None)
            if var is None:
                if rhs != 0:
                    return None
                constraints.pop(k)
                changed = True
                break
            c = coeffs[var]
            expr_coeffs = [-e / c for e in coeffs]
            expr_coeffs[var] = Q0
            expr_const = rhs / c
            constraints.pop(k)
            constraints = _substitute(constraints, var, expr_coeffs, expr_const)
            subs.append((var, tuple(expr_coeffs), expr_const))
            changed = True
            break

    # Fourier-Motzkin on the inequalities
    active = sorted({j for coeffs, _, _ in constraints for j, c in enumerate(coeffs) if c != 0})
    elim_stack = []  # (var, lowers, uppers); bounds as (coeffs, const, strict)
    for var in active:
        lowers, uppers, keep = [], [], []
        for coeffs, rel, rhs in constraints:
            c = coeffs[var]
            if c == 0:
                keep.append((coeffs, rel, rhs))
                continue
            bound_coeffs = tuple(-e / c if j != var else Q0 for j, e in enumerate(coeffs))
            bound_const = rhs / c
            strict = rel == "<"
            if c > 0:
                uppers.append((bound_coeffs, bound_const, strict))
            else:
                lowers.append((bound_coeffs, bound_const, strict))
        new = keep
        for lo in lowers:
            for hi in uppers:
                coeffs = tuple(a - b for a, b in zip(lo[0], hi[0]))
                rel = "<" if (lo[2] or hi[2]) else "<="
                new.append((coeffs, rel, hi[1] - lo[1]))
        elim_stack.append((var, lowers, uppers))
        constraints = new

    for coeffs, rel, rhs in constraints:
        if any(c != 0 for c in coeffs):
            raise AssertionError("variable survived elimination")
        if rel == "<" and not rhs > 0:
            return None
        if rel == "<=" and not rhs >= 0:
            return None

    # back-substitute: first the FM variables, then the equality variables
    x = [Q0] * n_vars
    for var, lowers, uppers in reversed(elim_stack):
        lo_val, lo_strict = None, False
        for coeffs, const, strict in lowers:
            v = dot(coeffs, x) + const
            if lo_val is None or v > lo_val or (v == lo_val and strict):
                lo_val, lo_strict = v, strict
        hi_val, hi_strict = None, False
        for coeffs, const, strict in uppers:
            v = dot(coeffs, x) + const
            if hi_val is None or v < hi_val or (v == hi_val and strict):
                hi_val, hi_strict = v, strict
        if lo_val is None and hi_val is None:
            x[var] = Q0
        elif lo_val is None:
            x[var] = hi_val - 1 if hi_strict else hi_val
        elif hi_val is None:
            x[var] = lo_val + 1 if lo_strict else lo_val
        elif lo_val == hi_val:
            x[var] = lo_val
        else:
            x[var] = (lo_val + hi_val) / 2
    for var, expr_coeffs, expr_const in reversed(subs):
        x[var] = dot(expr_coeffs, x) + expr_const
    return tuple(x)


def affine_solve(rows, rhs):
    """Solve a (possibly underdetermined) system rows . x = rhs.

    Returns (particular_solution, null_space_basis) with free variables set
    to zero, or None if inconsistent.
    """
    if not rows:
        raise ValueError("empty system")
    n = len(rows[0])
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [e / pv for e in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [e - f * ar for e, ar in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None
    part = [Q0] * n
    for i, c in enumerate(piv_cols):
        part[c] = aug[i][n]
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [Q0] * n
        v[fc] = Q1
        for i, c in enumerate(piv_cols):
            v[c] = -aug[i][fc]
        basis.append(tuple(v))
    return tuple(part), tuple(basis)


def rank(rows):
    """Rank of a list of rational vectors."""
    work = [list(r) for r in rows]
    n_cols = len(work[0]) if work else 0
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][c]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c] / pv
                work[i] = [e - f * w for e, w in zip(work[i], work[r])]
        r += 1
    return r


def fraction_str(x):
    """Serialize a Fraction as 'p/q' (or 'p' when integral)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s):
    return Fraction(s)

"""Sparse F2 chain complexes, reduced Betti numbers, induced-map tests.

Chains are sets of cell keys; linear algebra over F2 uses Python integers as
bit rows (bit i = coefficient of the i-th cell in a fixed sorted order), so
Gaussian elimination is a handful of xors.  Betti numbers are reduced: the
degree-0 boundary is augmented by the empty cell.
"""


class F2Chain:
    """A k-chain over F2: the set of cells with coefficient 1."""

    def __init__(self, dim, support=()):
        self.dim = dim
        self.support = frozenset(support)

    def __eq__(self, other):
        return isinstance(other, F2Chain) and (self.dim, self.support) == (other.dim, other.support)

    def __hash__(self):
        return hash((self.dim, self.support))

    def __bool__(self):
        return bool(self.support)

    def __add__(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return F2Chain(self.dim, self.support ^ other.support)

    def __repr__(self):
        return f"F2Chain(dim={self.dim}, |supp|={len(self.support)})"


class ChainComplexF2:
    """F2 cellular chain complex of a CellComplex.

    The boundary of a k-cell is the sum of its codimension-1 faces; for a
    general chain the coefficient of a face is the parity of its cofaces in
    the support.  d o d = 0 is asserted on construction.
    """

    def __init__(self, complex_):
        if not complex_.frozen:
            raise ValueError("freeze the complex first")
        self.complex = complex_
        self.top = complex_.dim
        self.cells = {k: complex_.cells(k) for k in range(self.top + 1)}
        self.index = {
            k: {c: i for i, c in enumerate(cs)} for k, cs in self.cells.items()
        }
        # boundary of each k-cell as a bit row over the (k-1)-cells
        self.bnd = {}
        for k in range(self.top + 1):
            cols = []
            for c in self.cells[k]:
                row = 0
                if k > 0:
                    idx = self.index[k - 1]
                    for f in complex_.facets(c):
                        row ^= 1 << idx[f]
                else:
                    row = 1  # augmentation to the empty cell
                cols.append(row)
            self.bnd[k] = cols
        for k in range(2, self.top + 1):
            for c, col in zip(self.cells[k], self.bnd[k]):
                acc = 0
                idx = self.index[k - 1]
                for f in self.complex.facets(c):
                    acc ^= self.bnd[k - 1][idx[f]]
                if acc:
                    raise AssertionError(f"boundary of boundary non-zero at {c!r}")

    # --- chain plumbing ---------------------------------------------------

    def to_bits(self, chain):
        idx = self.index[chain.dim]
        row = 0
        for c in chain.support:
            row ^= 1 << idx[c]
        return row

    def from_bits(self, dim, row):
        cs = self.cells[dim]
        return F2Chain(dim, {cs[i] for i in range(row.bit_length()) if row >> i & 1})

    def boundary(self, chain):
        """Boundary chain; coefficient of a face = parity of its cofaces in supp."""
        if chain.dim == 0:
            return F2Chain(-1, frozenset())
        idx = self.index[chain.dim]
        acc = 0
        for c in chain.support:
            acc ^= self.bnd[chain.dim][idx[c]]
        return self.from_bits(chain.dim - 1, acc)

    # --- F2 linear algebra ------------------------------------------------

    def _column_space(self, k):
        """Pivot-reduced basis of im(bnd_k) as {pivot_bit: row}."""
        if k < 0 or k > self.top:
            return {}
        pivots = {}
        for col in self.bnd[k]:
            col = self._reduce(col, pivots)
            if col:
                pivots[col.bit_length() - 1] = col
        return pivots

    @staticmethod
    def _reduce(row, pivots):
        while row:
            p = row.bit_length() - 1
            if p not in pivots:
                return row
            row ^= pivots[p]
        return 0

    def kernel_basis(self, k, augmented=True):
        """Basis of the k-cycles (reduced: degree 0 uses the augmentation)."""
        if k == 0 and not augmented:
            return [F2Chain(0, {c}) for c in self.cells[0]]
        pivots = {}
        kernel = []
        for j, col in enumerate(self.bnd[k]):
            row, combo = col, 1 << j
            while row:
                p = row.bit_length() - 1
                if p not in pivots:
                    break
                prow, pcombo = pivots[p]
                row ^= prow
                combo ^= pcombo
            if row:
                pivots[row.bit_length() - 1] = (row, combo)
            else:
                kernel.append(self.from_bits(k, combo))
        return kernel

    def rank(self, k):
        return len(self._column_space(k))

    def betti(self, k):
        """Reduced F2 Betti number in degree k."""
        if k < 0 or k > self.top:
            return 0
        n_k = len(self.cells[k])
        z_k = n_k - self.rank(k)  # cycles (reduced in degree 0)
        b_k = len(self._column_space(k + 1))
        return z_k - b_k

    def solve_boundary(self, k, target):
        """One k-chain with the given boundary, or None.

        `target` is a (k-1)-chain (or an augmented 0-chain when k = 0).
        """
        pivots = {}
        for j, col in enumerate(self.bnd[k]):
            row, combo = col, 1 << j
            while row:
                p = row.bit_length() - 1
                if p not in pivots:
                    break
                prow, pcombo = pivots[p]
                row ^= prow
                combo ^= pcombo
            if row:
                pivots[row.bit_length() - 1] = (row, combo)
        t = self.to_bits(target)
        combo = 0
        while t:
            p = t.bit_length() - 1
            if p not in pivots:
                return None
            prow, pcombo = pivots[p]
            t ^= prow
            combo ^= pcombo
        return self.from_bits(k, combo)

    def bounds(self, chain):
        """Whether the cycle bounds (is in the image of the next boundary map)."""
        if chain.dim >= self.top:
            return not chain
        return self.solve_boundary(chain.dim + 1, chain) is not None


def betti(complex_, k):
    """Reduced F2 Betti number of a frozen CellComplex."""
    return ChainComplexF2(complex_).betti(k)


def betti_vector(complex_):
    cc = ChainComplexF2(complex_)
    return [cc.betti(k) for k in range(cc.top + 1)]


def induced_map_trivial(small, big, k):
    """Does every k-cycle of `small` bound in `big`?

    Both are frozen CellComplexes sharing cell keys, small a subcomplex of
    big.  Returns (True, None) or (False, witness_cycle).  Degree 0 is
    reduced: 0-cycles are the even 0-chains.
    """
    for c in small.cells():
        if c not in big:
            raise ValueError(f"cell {c!r} of the small complex missing from the big one")
    small_cc = ChainComplexF2(small)
    if k > small_cc.top:
        return True, None
    big_cc = ChainComplexF2(big)
    for cycle in small_cc.kernel_basis(k):
        if not big_cc.bounds(cycle):
            return False, cycle
    return True, None

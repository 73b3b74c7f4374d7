"""Finite polysimplicial complexes with face incidence.

The one carrier shared by Coxeter windows, flag buildings and Bruhat-Tits
truncations.  Cells are indexed by caller-supplied canonical keys (hashable,
totally ordered within one complex); faces are recorded one codimension down,
which determines the whole face lattice since cells are polytopes.
"""

import json


class CellComplex:
    def __init__(self):
        self._dim = {}
        self._facets = {}
        self._cofacets = None
        self.frozen = False

    # --- construction ----------------------------------------------------

    def add_cell(self, key, dim, facets=()):
        if self.frozen:
            raise RuntimeError("complex is frozen")
        if key in self._dim:
            if self._dim[key] != dim:
                raise ValueError(f"cell {key!r} re-added with different dimension")
            self._facets[key].update(facets)
        else:
            self._dim[key] = dim
            self._facets[key] = set(facets)

    def freeze(self):
        for key, fs in self._facets.items():
            for f in fs:
                if f not in self._dim:
                    raise ValueError(f"missing facet {f!r} of {key!r}")
                if self._dim[f] != self._dim[key] - 1:
                    raise ValueError(f"facet {f!r} of {key!r} has wrong dimension")
        self._facets = {k: frozenset(v) for k, v in self._facets.items()}
        self._cofacets = {k: set() for k in self._dim}
        for key, fs in self._facets.items():
            for f in fs:
                self._cofacets[f].add(key)
        self._cofacets = {k: frozenset(v) for k, v in self._cofacets.items()}
        self.frozen = True
        return self

    # --- queries -----------------------------------------------------------

    def __contains__(self, key):
        return key in self._dim

    def __len__(self):
        return len(self._dim)

    def dim_of(self, key):
        return self._dim[key]

    @property
    def dim(self):
        return max(self._dim.values(), default=-1)

    def cells(self, dim=None):
        if dim is None:
            return sorted(self._dim)
        return sorted(k for k, d in self._dim.items() if d == dim)

    def facets(self, key):
        return self._facets[key]

    def cofacets(self, key):
        return self._cofacets[key]

    def closure(self, keys):
        """All iterated faces of the given cells (including themselves)."""
        seen = set()
        stack = list(keys)
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(self._facets[k])
        return seen

    def star(self, key):
        """Open star: all iterated cofaces (including the cell itself)."""
        seen = set()
        stack = [key]
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(self._cofacets[k])
        return seen

    def faces_of(self, key):
        """Proper faces of one cell."""
        return self.closure([key]) - {key}

    def is_face_closed(self, keys):
        keys = set(keys)
        return all(f in keys for k in keys for f in self._facets[k])

    def restrict(self, keys):
        """Subcomplex on a face-closed set of cells."""
        keys = set(keys)
        if not self.is_face_closed(keys):
            raise ValueError("cell set is not face-closed")
        sub = CellComplex()
        for k in keys:
            sub.add_cell(k, self._dim[k], self._facets[k])
        return sub.freeze()

    def supported_on(self, keys):
        """Largest subcomplex whose cells all lie in the given set."""
        keys = set(keys)
        good = {k for k in keys if all(f in keys for f in self._facets[k])}
        # a cell is kept iff its entire closure consists of kept cells;
        # iterate until stable (closure chains are short).
        changed = True
        while changed:
            changed = False
            for k in list(good):
                if any(f not in good for f in self._facets[k]):
                    good.discard(k)
                    changed = True
        return good

    def chamber_adjacency(self, chamber_dim=None):
        """Map chamber -> sorted list of (panel, neighbor) pairs."""
        d = self.dim if chamber_dim is None else chamber_dim
        adj = {c: [] for c in self.cells(d)}
        for panel in self.cells(d - 1):
            cs = sorted(self._cofacets[panel])
            for c in cs:
                for e in cs:
                    if e != c:
                        adj[c].append((panel, e))
        return {c: sorted(v) for c, v in adj.items()}

    # --- export ---------------------------------------------------------

    def to_json(self, constraints=None):
        keys = self.cells()
        ids = {k: i for i, k in enumerate(keys)}
        cells = []
        for k in keys:
            entry = {
                "id": ids[k],
                "key": str(k),
                "dim": self._dim[k],
                "faces": sorted(ids[f] for f in self._facets[k]),
            }
            if constraints is not None:
                entry["constraints"] = constraints(k)
            cells.append(entry)
        return {"cells": cells}

    def to_dot(self, chamber_dim=None, name="chambers"):
        d = self.dim if chamber_dim is None else chamber_dim
        keys = self.cells(d)
        ids = {k: i for i, k in enumerate(keys)}
        lines = [f"graph {name} {{"]
        for k in keys:
            lines.append(f'  n{ids[k]} [label="{k}"];')
        seen = set()
        for panel in self.cells(d - 1):
            cs = sorted(self._cofacets[panel])
            for i, c in enumerate(cs):
                for e in cs[i + 1:]:
                    if (c, e) not in seen:
                        seen.add((c, e))
                        lines.append(f"  n{ids[c]} -- n{ids[e]};")
        lines.append("}")
        return "\n".join(lines)


def dumps_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2)

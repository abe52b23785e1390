"""Small-dimension linear algebra over Z/p^m.

Submodules of (Z/p^m)^d are stored via a Howell-style canonical generating
set: one generator per pivot column, pivot entries normalized to powers of p,
plus the annihilator completions p^(m-v) * row that make membership testing
by successive elimination sound over the non-field ring Z/p^m.  For m = 1
this degenerates into ordinary row echelon form over F_p.

Dimensions here are tiny (d = 4 throughout the package), so clarity beats
asymptotics.
"""

from __future__ import annotations

from .dvr import int_valuation


def _leading(row):
    for j, x in enumerate(row):
        if x != 0:
            return j
    return None


class ZModModule:
    """A submodule of (Z/p^m)^dim given by Howell-form generators."""

    def __init__(self, p: int, m: int, dim: int, generators):
        self.p = p
        self.m = m
        self.dim = dim
        self.q = p**m
        self.rows = self._howell([tuple(int(x) % self.q for x in g) for g in generators])

    def _howell(self, rows):
        p, m, q = self.p, self.m, self.q
        work = [list(r) for r in rows if any(x % q for x in r)]
        basis = []
        for col in range(self.dim):
            cand = [r for r in work if _leading(r) == col]
            if not cand:
                continue
            pivot = min(cand, key=lambda r: int_valuation(r[col], p))
            work.remove(pivot)
            v = int(int_valuation(pivot[col], p))
            unit = pivot[col] // p**v
            inv = pow(unit, -1, q)
            pivot = [(x * inv) % q for x in pivot]  # pivot entry is now p^v
            reduced = []
            for r in work:
                if r[col] % q:
                    t = r[col] // p**v  # valuation >= v by pivot choice
                    r = [(x - t * y) % q for x, y in zip(r, pivot)]
                if any(r):
                    reduced.append(r)
            work = reduced
            if v > 0:
                ann = [(x * p ** (m - v)) % q for x in pivot]
                if any(ann):
                    work.append(ann)
            basis.append((col, v, tuple(pivot)))
        return basis

    def reduce(self, vector):
        """Residual of vector after elimination; zero iff vector is a member."""
        vec = [int(x) % self.q for x in vector]
        for col, v, row in self.rows:
            if vec[col] % self.q == 0:
                continue
            if vec[col] % self.p**v:
                break  # cannot eliminate: not a member
            t = vec[col] // self.p**v
            vec = [(x - t * y) % self.q for x, y in zip(vec, row)]
        return tuple(vec)

    def contains(self, vector) -> bool:
        return not any(self.reduce(vector))

    def contains_module(self, other: "ZModModule") -> bool:
        return all(self.contains(row) for _, _, row in other.rows)

    def equals(self, other: "ZModModule") -> bool:
        return self.contains_module(other) and other.contains_module(self)

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def generators(self):
        return tuple(row for _, _, row in self.rows)


class FpSpan(ZModModule):
    """Subspace of F_p^dim (the m = 1 case), with a dimension notion."""

    def __init__(self, p: int, dim: int, generators):
        super().__init__(p, 1, dim, generators)

    @property
    def fp_dimension(self) -> int:
        return len(self.rows)

    def basis(self):
        return self.generators


def fp_rref(matrix, p: int):
    """Reduced row echelon form over F_p; returns the nonzero rows."""
    echelon = []  # kept sorted by leading index, pivots normalized to 1
    for r in matrix:
        r = [x % p for x in r]
        for prow in echelon:
            lead = _leading(prow)
            if r[lead]:
                fac = r[lead]
                r = [(x - fac * y) % p for x, y in zip(r, prow)]
        if any(r):
            lead = _leading(r)
            inv = pow(r[lead], -1, p)
            echelon.append([(x * inv) % p for x in r])
            echelon.sort(key=_leading)
    for i in range(len(echelon) - 1, 0, -1):
        lead = _leading(echelon[i])
        for j in range(i):
            fac = echelon[j][lead]
            if fac:
                echelon[j] = [(x - fac * y) % p for x, y in zip(echelon[j], echelon[i])]
    return [tuple(r) for r in echelon]


def fp_kernel(matrix, p: int):
    """Kernel basis of a matrix over F_p (rows = equations, dim = #columns)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rref = fp_rref(matrix, p)
    pivots = {_leading(r): r for r in rref}
    free = [j for j in range(ncols) if j not in pivots]
    kernel = []
    for j in free:
        vec = [0] * ncols
        vec[j] = 1
        for col, prow in pivots.items():
            vec[col] = (-prow[j]) % p
        kernel.append(tuple(vec))
    return kernel

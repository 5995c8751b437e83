"""Exact linear algebra over Z and over fields (Fraction / cyclotomic).

Integer sublattices are kept in row-style Hermite normal form with pivot
bookkeeping; quotients use Smith normal form with recorded transforms.
"""

from __future__ import annotations

from fractions import Fraction


class IntLattice:
    """A sublattice of Z^n maintained in Hermite normal form.

    Rows are kept with positive pivots, sorted by pivot column, and entries
    above each pivot reduced into [0, pivot).
    """

    def __init__(self, ambient_dim: int, rows=None):
        self.n = ambient_dim
        self.rows = []          # basis rows, pivot order
        self.pivot_cols = []    # pivot column of each row
        if rows is not None:
            for r in rows:
                self.add(r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "IntLattice":
        out = IntLattice(self.n)
        out.rows = [list(r) for r in self.rows]
        out.pivot_cols = list(self.pivot_cols)
        return out

    def reduce(self, vec):
        """Residue of vec modulo the lattice (entries reduced at pivots)."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivot_cols):
            if v[p]:
                q = v[p] // row[p]
                if q:
                    for j in range(p, self.n):
                        v[j] -= q * row[j]
        return v

    def __contains__(self, vec) -> bool:
        supp = self._coordinate_support()
        if supp is not None:
            return all(not x or j in supp for j, x in enumerate(vec))
        v = list(vec)
        for row, p in zip(self.rows, self.pivot_cols):
            if v[p]:
                q, r = divmod(v[p], row[p])
                if r:
                    return False
                for j in range(p, self.n):
                    v[j] -= q * row[j]
        return not any(v)

    def _coordinate_support(self):
        """Pivot set when the lattice is a span of unit vectors, else None."""
        cached = getattr(self, "_coord_cache", None)
        if cached is not None and cached[0] == len(self.rows):
            return cached[1]
        supp = set(self.pivot_cols) if self.is_coordinate_span() else None
        self._coord_cache = (len(self.rows), supp)
        return supp

    def add(self, vec) -> bool:
        """Insert a vector; returns True if the lattice grew."""
        v = list(vec)
        changed = False
        i = 0
        while True:
            # find leading nonzero
            p = next((j for j in range(self.n) if v[j]), None)
            if p is None:
                break
            # locate insertion point among existing pivots
            pos = 0
            while pos < len(self.rows) and self.pivot_cols[pos] < p:
                pos += 1
            if pos == len(self.rows) or self.pivot_cols[pos] != p:
                if v[p] < 0:
                    v = [-x for x in v]
                self.rows.insert(pos, v)
                self.pivot_cols.insert(pos, p)
                changed = True
                break
            row = self.rows[pos]
            a, b = row[p], v[p]
            if b % a == 0:
                q = b // a
                for j in range(p, self.n):
                    v[j] -= q * row[j]
            else:
                g, x, y = _xgcd(a, b)
                # combined row with pivot gcd replaces the old one
                new_row = [x * row[j] + y * v[j] for j in range(self.n)]
                ca, cb = a // g, b // g
                new_v = [cb * row[j] - ca * v[j] for j in range(self.n)]
                self.rows[pos] = new_row
                v = new_v
                changed = True
        if changed:
            self._normalize()
        return changed

    def _normalize(self):
        # reduce entries above each pivot into [0, pivot)
        for i in range(len(self.rows) - 1, -1, -1):
            p = self.pivot_cols[i]
            piv = self.rows[i][p]
            for k in range(i):
                q = self.rows[k][p] // piv
                if q:
                    rk, ri = self.rows[k], self.rows[i]
                    for j in range(p, self.n):
                        rk[j] -= q * ri[j]

    def add_all(self, vecs) -> bool:
        changed = False
        for v in vecs:
            changed |= self.add(v)
        return changed

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(r in self for r in other.rows)

    def __eq__(self, other):
        return (isinstance(other, IntLattice) and self.n == other.n
                and self.rows == other.rows)

    def basis(self):
        return [list(r) for r in self.rows]

    def is_coordinate_span(self) -> bool:
        """True if the lattice is spanned by unit coordinate vectors."""
        return all(sum(1 for x in r if x) == 1 and r[p] == 1
                   for r, p in zip(self.rows, self.pivot_cols))

    def support(self):
        return list(self.pivot_cols)


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(mat, with_vinv=False):
    """Smith normal form with transforms: returns (d, U, V) with U*A*V = D.

    ``d`` is the list of diagonal entries (nonneg, each dividing the next);
    U and V are unimodular (built from elementary operations only). With
    ``with_vinv`` the inverse of V is tracked alongside and returned too.
    """
    A = [list(r) for r in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)
    Vinv = _identity(n) if with_vinv else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        if Vinv is not None:
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def addmul_row(dst, src, c):
        Ad, As = A[dst], A[src]
        for j in range(n):
            Ad[j] += c * As[j]
        Ud, Us = U[dst], U[src]
        for j in range(m):
            Ud[j] += c * Us[j]

    def addmul_col(dst, src, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]
        if Vinv is not None:
            # (V E)^-1 = E^-1 V^-1 with E = I + c e_{src,dst}
            Vs, Vd = Vinv[src], Vinv[dst]
            for j in range(n):
                Vs[j] -= c * Vd[j]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < m and t < n:
        # find a nonzero pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    addmul_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    addmul_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(A[i][t] == 0 for i in range(t + 1, m)) \
                    and all(A[t][j] == 0 for j in range(t + 1, n)):
                break
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    # enforce divisibility d_i | d_{i+1}
    k = min(m, n)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a and b % a:
                # standard 2x2 fix-up
                addmul_col(i, i + 1, 1)
                while True:
                    # re-clear the 2x2 block
                    q = A[i + 1][i] // A[i][i] if A[i][i] else 0
                    if A[i][i] and A[i + 1][i]:
                        addmul_row(i + 1, i, -q)
                    if A[i + 1][i]:
                        swap_rows(i, i + 1)
                        continue
                    if A[i][i + 1]:
                        q = A[i][i + 1] // A[i][i]
                        addmul_col(i + 1, i, -q)
                        if A[i][i + 1]:
                            swap_cols(i, i + 1)
                            continue
                    break
                if A[i][i] < 0:
                    negate_row(i)
                if A[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    d = [A[i][i] for i in range(k)]
    if with_vinv:
        return d, U, V, Vinv
    return d, U, V


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j in range(n):
                    acc[j] += a * Bk[j]
        out.append(acc)
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_inverse_unimodular(U):
    """Inverse of a unimodular integer matrix (exact, via adjugate-free solve)."""
    n = len(U)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(U)]
    # fraction-free Gauss-Jordan over Q, result must be integral
    m = [[Fraction(x) for x in row] for row in aug]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    out = []
    for row in m:
        vals = row[n:]
        assert all(x.denominator == 1 for x in vals), "matrix was not unimodular"
        out.append([int(x) for x in vals])
    return out


class FieldLattice:
    """A subspace of F^n in reduced row echelon form.

    Scalars need +, -, *, /, bool() and equality (Fraction or Cyclo work).
    """

    def __init__(self, ambient_dim: int, zero, one, rows=None):
        self.n = ambient_dim
        self.zero = zero
        self.one = one
        self.rows = []
        self.pivot_cols = []
        if rows:
            for r in rows:
                self.add(r)

    @property
    def rank(self):
        return len(self.rows)

    def copy(self):
        out = FieldLattice(self.n, self.zero, self.one)
        out.rows = [list(r) for r in self.rows]
        out.pivot_cols = list(self.pivot_cols)
        return out

    def reduce(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivot_cols):
            c = v[p]
            if c:
                for j in range(p, self.n):
                    v[j] = v[j] - c * row[j]
        return v

    def __contains__(self, vec):
        cached = getattr(self, "_coord_cache", None)
        if cached is None or cached[0] != len(self.rows):
            supp = set(self.pivot_cols) if self.is_coordinate_span() else None
            cached = (len(self.rows), supp)
            self._coord_cache = cached
        if cached[1] is not None:
            return all(not x or j in cached[1] for j, x in enumerate(vec))
        return not any(self.reduce(vec))

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        p = next((j for j in range(self.n) if v[j]), None)
        if p is None:
            return False
        inv = self.one / v[p]
        v = [x * inv for x in v]
        # clear this column above
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(self.n):
                    row[j] = row[j] - c * v[j]
        pos = 0
        while pos < len(self.rows) and self.pivot_cols[pos] < p:
            pos += 1
        self.rows.insert(pos, v)
        self.pivot_cols.insert(pos, p)
        return True

    def add_all(self, vecs) -> bool:
        changed = False
        for v in vecs:
            changed |= self.add(v)
        return changed

    def contains_lattice(self, other) -> bool:
        return all(r in self for r in other.rows)

    def __eq__(self, other):
        return (isinstance(other, FieldLattice) and self.n == other.n
                and self.pivot_cols == other.pivot_cols
                and all(all(a == b for a, b in zip(r1, r2))
                        for r1, r2 in zip(self.rows, other.rows)))

    def basis(self):
        return [list(r) for r in self.rows]

    def support(self):
        return list(self.pivot_cols)

    def is_coordinate_span(self) -> bool:
        return all(sum(1 for x in r if x) == 1 for r in self.rows)

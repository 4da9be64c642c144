"""Exact sparse linear algebra over Q and F_p.

Matrices are stored as mappings (row, col) -> nonzero entry.  Rank and
kernel computations use sparse Gaussian elimination with a cheap
Markowitz-style pivot rule (shortest row, then least-populated column)
to limit fill-in.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field


class StructuralError(ValueError):
    """Raised on malformed matrix data (index out of bounds, shape mismatch)."""


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise StructuralError(f"entry ({r},{c}) out of bounds for {self.rows}x{self.cols}")
            if v == 0:
                raise StructuralError(f"stored zero entry at ({r},{c})")

    @classmethod
    def from_dense(cls, data, field: Field | None = None) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        conv = field.from_int if field is not None else (lambda x: x)
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise StructuralError("ragged rows")
            for c, v in enumerate(row):
                v = conv(v) if isinstance(v, int) else v
                if v != 0:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int, field: Field) -> "SparseMatrix":
        one = field.one()
        return cls(n, n, {(i, i): one for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list[dict]:
        """All columns as row->value dicts (including empty ones)."""
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def scale(self, a, field: Field) -> "SparseMatrix":
        if field.is_zero(a):
            return SparseMatrix.zero(self.rows, self.cols)
        return SparseMatrix(self.rows, self.cols, {k: field.mul(a, v) for k, v in self.entries.items()})

    def add(self, other: "SparseMatrix", field: Field) -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise StructuralError("shape mismatch in add")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = field.add(out.get(k, field.zero()), v)
            if field.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return SparseMatrix(self.rows, self.cols, out)

    def mul(self, other: "SparseMatrix", field: Field) -> "SparseMatrix":
        """Matrix product self @ other."""
        if self.cols != other.rows:
            raise StructuralError("shape mismatch in mul")
        left_cols = self.columns()
        out = {}
        zero = field.zero()
        for (r, c), v in other.entries.items():
            col = left_cols[r]
            for rr, w in col.items():
                k = (rr, c)
                s = field.add(out.get(k, zero), field.mul(w, v))
                if field.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec: dict, field: Field) -> dict:
        """Apply to a sparse column vector {index: value}."""
        out = {}
        zero = field.zero()
        cols = None
        for c, v in vec.items():
            if not (0 <= c < self.cols):
                raise StructuralError("vector index out of bounds")
            if cols is None:
                cols = self.columns()
            for r, w in cols[c].items():
                s = field.add(out.get(r, zero), field.mul(w, v))
                if field.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        return out


def _row_echelon(columns_or_matrix, field: Field, want_basis: bool):
    """Shared elimination core; operates on a list of row-dicts."""
    if isinstance(columns_or_matrix, SparseMatrix):
        M = columns_or_matrix
        rowdicts = [dict() for _ in range(M.rows)]
        for (r, c), v in M.entries.items():
            rowdicts[r][c] = v
    else:
        rowdicts = columns_or_matrix
    active = [rd for rd in rowdicts if rd]
    pivots = []  # (pivot_col, row_dict) with row normalized to pivot 1
    colcount: dict[int, int] = {}
    for rd in active:
        for c in rd:
            colcount[c] = colcount.get(c, 0) + 1
    while active:
        # pivot rule: shortest row, then its least-populated column
        best = min(range(len(active)), key=lambda i: (len(active[i]), min(active[i])))
        row = active.pop(best)
        pc = min(row, key=lambda c: (colcount.get(c, 0), c))
        inv = field.inv(row[pc])
        row = {c: field.mul(inv, v) for c, v in row.items()}
        pivots.append((pc, row))
        survivors = []
        for rd in active:
            if pc in rd:
                f = rd[pc]
                for c, v in row.items():
                    s = field.sub(rd.get(c, field.zero()), field.mul(f, v))
                    had = c in rd
                    if field.is_zero(s):
                        if had:
                            del rd[c]
                            colcount[c] -= 1
                    else:
                        if not had:
                            colcount[c] = colcount.get(c, 0) + 1
                        rd[c] = s
            if rd:
                survivors.append(rd)
        active = survivors
    if not want_basis:
        return len(pivots), None
    # back-substitute to reduced echelon form: clear each pivot column from
    # every other row, in decreasing column order so cleaned rows stay clean
    pivots.sort(key=lambda t: t[0])
    for i in range(len(pivots) - 1, -1, -1):
        pc, row = pivots[i]
        for j, (qc, qrow) in enumerate(pivots):
            if j == i or pc not in qrow:
                continue
            f = qrow[pc]
            for c, v in row.items():
                s = field.sub(qrow.get(c, field.zero()), field.mul(f, v))
                if field.is_zero(s):
                    qrow.pop(c, None)
                else:
                    qrow[c] = s
    return len(pivots), pivots


def rank(M: SparseMatrix, field: Field) -> int:
    """Exact rank of M over the field."""
    r, _ = _row_echelon(M, field, want_basis=False)
    return r


def kernel_basis(M: SparseMatrix, field: Field) -> list[dict]:
    """Basis of the right null space, as sparse vectors {col_index: value}.

    Returns cols - rank(M) vectors; each free column yields one vector with
    a 1 in that position (deterministic given the matrix).
    """
    _, pivots = _row_echelon(M, field, want_basis=True)
    pivot_cols = {pc for pc, _ in pivots}
    basis = []
    one = field.one()
    for f in range(M.cols):
        if f in pivot_cols:
            continue
        vec = {f: one}
        for pc, row in pivots:
            if f in row:
                vec[pc] = field.neg(row[f])
        basis.append(vec)
    return basis


def rank_of_columns(columns: list[dict], field: Field) -> int:
    """Rank of the span of sparse column vectors {row: value}."""
    rows = [dict(c) for c in columns if c]
    r, _ = _row_echelon(rows, field, want_basis=False)
    return r


def matrix_from_columns(columns: list[dict], rows: int) -> SparseMatrix:
    entries = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v != 0:
                entries[(r, c)] = v
    return SparseMatrix(rows, len(columns), entries)

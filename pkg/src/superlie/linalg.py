"""Exact linear algebra over GF(p^k) on integer-code numpy matrices.

Matrices are 2-D ``int64`` arrays whose entries are field codes for a given
:class:`~superlie.gf.Field`.  Everything reduces to Gauss elimination done
with the field's scalar tables, so results are exact.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .gf import Field


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over F; (n, m) x (m, r) -> (n, r)."""
    a = np.asarray(a)
    b = np.asarray(b)
    n, m = a.shape
    m2, r = b.shape
    if m != m2:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    out = zeros((n, r))
    # accumulate row-by-row to keep intermediate arrays small
    for i in range(m):
        col = a[:, i]
        row = b[i]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        prod = F.mul_arr(col[nz, None], row[None, :])
        out[nz] = F.add_arr(out[nz], prod)
    return out


def matvec(F: Field, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return matmul(F, a, np.asarray(v)[:, None])[:, 0]


def scale(F: Field, c: int, a: np.ndarray) -> np.ndarray:
    return F.smul_arr(c, np.asarray(a))


def add(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return F.add_arr(np.asarray(a), np.asarray(b))


def sub(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return F.sub_arr(np.asarray(a), np.asarray(b))


def rref(F: Field, mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (reduced matrix, pivot columns)."""
    m = np.array(mat, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        t = r + int(nz[0])
        if t != r:
            m[[r, t]] = m[[t, r]]
        piv = int(m[r, c])
        if piv != 1:
            m[r] = F.smul_arr(F.inv(piv), m[r])
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            elim = F.mul_arr(m[other, c][:, None], m[r][None, :])
            m[other] = F.sub_arr(m[other], elim)
        pivots.append(c)
        r += 1
    return m, pivots


def rank(F: Field, mat: np.ndarray) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return len(rref(F, mat)[1])


def nullspace(F: Field, mat: np.ndarray) -> np.ndarray:
    """Basis (rows) of the right kernel {v : mat v = 0}."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return eye(mat.shape[1]) if mat.ndim == 2 else zeros((0, 0))
    red, pivots = rref(F, mat)
    cols = mat.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros((len(free), cols))
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(red[r, fc]))
    return basis


def solve(F: Field, mat: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """One solution of mat x = rhs, or None if inconsistent."""
    mat = np.asarray(mat)
    rhs = np.asarray(rhs)
    aug = np.concatenate([mat, rhs[:, None]], axis=1)
    red, pivots = rref(F, aug)
    cols = mat.shape[1]
    if cols in pivots:
        return None
    x = zeros(cols)
    for r, c in enumerate(pivots):
        x[c] = red[r, cols]
    return x


def row_space_basis(F: Field, mat: np.ndarray) -> np.ndarray:
    """Independent rows of mat, in reduced echelon form."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return zeros((0, mat.shape[1] if mat.ndim == 2 else 0))
    red, pivots = rref(F, mat)
    return red[: len(pivots)]


def in_row_space(F: Field, basis_rref: np.ndarray, v: np.ndarray) -> bool:
    """Membership test against a basis already in reduced echelon form."""
    v = np.array(v, dtype=np.int64)
    for row in basis_rref:
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        c = int(nz[0])
        if v[c] != 0:
            v = F.sub_arr(v, F.smul_arr(int(v[c]), row))
    return not v.any()


def closure_under_operators(
    F: Field,
    seed_rows: np.ndarray,
    operators: Sequence[np.ndarray],
    dim_cap: Optional[int] = None,
) -> np.ndarray:
    """Smallest operator-stable subspace containing the seed rows.

    Operators act on column vectors; rows of the result are an echelon basis.
    Iterates until no operator image leaves the current span (or the span
    reaches ``dim_cap``, when provided, allowing early exit at full space).
    """
    basis = row_space_basis(F, np.asarray(seed_rows))
    frontier = basis
    while frontier.shape[0]:
        new_rows = []
        for op in operators:
            images = matmul(F, frontier, op.T)  # rows -> rows
            for img in images:
                if img.any() and not in_row_space(F, basis, img):
                    new_rows.append(img.copy())
                    basis = row_space_basis(F, np.concatenate([basis, img[None, :]]))
        if not new_rows:
            break
        frontier = np.array(new_rows, dtype=np.int64)
        if dim_cap is not None and basis.shape[0] >= dim_cap:
            break
    return basis


def largest_stable_subspace(
    F: Field, ambient_rows: np.ndarray, operators: Sequence[np.ndarray]
) -> np.ndarray:
    """Largest subspace of the row-span of ambient_rows stable under all operators.

    Shrinking iteration: with current basis B (rows), the stable core is cut
    out by requiring op·v to stay in the row space of B for every v in the
    candidate space.  Writing the constraint through the kernel K of B
    (K·B^T... more precisely rows spanning {f : f·B-span = 0} as functionals),
    each step solves for coefficient vectors c with K_amb·(op·(c·B)^T) = 0.
    Terminates because dimensions strictly decrease.
    """
    basis = row_space_basis(F, np.asarray(ambient_rows))
    n = basis.shape[1]
    while basis.shape[0]:
        # functionals vanishing on the current span: f with basis · f = 0
        K = nullspace(F, basis)
        if K.shape[0] == 0:
            # span is the whole ambient coordinate space; it is stable
            return basis
        # constraints: for coefficient vector c (len = #basis rows):
        #   K · (op · basis^T · c) = 0  for every op
        blocks = []
        for op in operators:
            blocks.append(matmul(F, matmul(F, K, op), basis.T))
        stacked = np.concatenate(blocks, axis=0) if blocks else zeros((0, basis.shape[0]))
        coeffs = nullspace(F, stacked)  # rows of coefficient vectors
        if coeffs.shape[0] == basis.shape[0]:
            return basis  # already stable
        if coeffs.shape[0] == 0:
            return zeros((0, n))
        basis = row_space_basis(F, matmul(F, coeffs, basis))
    return basis


def intersect_row_spaces(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Basis of the intersection of two row spaces."""
    a = row_space_basis(F, np.asarray(a))
    b = row_space_basis(F, np.asarray(b))
    if a.shape[0] == 0 or b.shape[0] == 0:
        return zeros((0, a.shape[1]))
    # v in both spans: v = x·a = y·b  ->  [a^T | -b^T]·(x,y) = 0
    stacked = np.concatenate([a.T, F.neg_arr(b.T)], axis=1)
    ker = nullspace(F, stacked)
    if ker.shape[0] == 0:
        return zeros((0, a.shape[1]))
    return row_space_basis(F, matmul(F, ker[:, : a.shape[0]], a))


def _commutation_constraint(F: Field, op: np.ndarray, s: int) -> np.ndarray:
    """Rows of the linear system T·op − s·op·T = 0 in the flattened unknown T.

    T is flattened row-major, index(i, k) = i*n + k.
    """
    n = op.shape[0]
    block = zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            r = i * n + j
            # (T·op)_{ij} = sum_k T_{ik}·op_{kj}
            block[r, i * n : (i + 1) * n] = op[:, j]
            # −s·(op·T)_{ij} = −s·sum_k op_{ik}·T_{kj}
            idx = np.arange(n) * n + j
            contrib = F.neg_arr(op[i, :]) if s == 1 else op[i, :].copy()
            block[r, idx] = F.add_arr(block[r, idx], contrib)
    return block


def supercommutant_basis(
    F: Field,
    even_ops: Sequence[np.ndarray],
    odd_ops: Sequence[np.ndarray],
    parity_op: np.ndarray,
    odd_part: bool,
) -> list[np.ndarray]:
    """Matrices spanning the even or odd part of the supercommutant.

    An even T commutes with every operator and with the parity involution;
    an odd T satisfies T·rho(a) = (−1)^{|a|}·rho(a)·T and anticommutes with
    the parity involution.
    """
    sign = -1 if odd_part else 1
    n = parity_op.shape[0]
    rows = [_commutation_constraint(F, op, 1) for op in even_ops]
    rows += [_commutation_constraint(F, op, sign) for op in odd_ops]
    rows.append(_commutation_constraint(F, parity_op, sign))
    ker = nullspace(F, np.concatenate(rows, axis=0))
    return [vec.reshape(n, n) for vec in ker]


def commutant_dim(
    F: Field,
    even_ops: Sequence[np.ndarray],
    odd_ops: Sequence[np.ndarray],
    parity_op: np.ndarray,
) -> tuple[int, int]:
    """Dimensions of the even and odd parts of the supercommutant."""
    even = supercommutant_basis(F, even_ops, odd_ops, parity_op, odd_part=False)
    odd = supercommutant_basis(F, even_ops, odd_ops, parity_op, odd_part=True)
    return len(even), len(odd)

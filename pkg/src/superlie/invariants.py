"""Comultiplication, coinduced function algebras, and invariant ideals.

The unshuffle coproduct on a PBW basis sends each monomial to the signed sum
of its two-block splits, with binomial coefficients on even letters and
Koszul signs on odd ones.  Dualizing over a restricted subalgebra q yields
the function algebra F(g, q) on the coset side, with multiplication carried
through the coproduct and a g-action by right translation.  The ideal
machinery locates g-invariant ideals of these and of the reduced symmetric
algebras, and reports graded and total codimensions.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .envelope import DeformedAlgebra
from .gf import Field
from .liesuper import LieSuperalgebra, PCharacter

# ---------------------------------------------------------------------------
# comultiplication


def comultiply_monomial(U: DeformedAlgebra, m: tuple) -> dict:
    """Delta(e^m) as {(m1, m2): coefficient} with exact Koszul signs."""
    F = U.F
    zero = (0,) * U.n_slots
    terms = {(zero, zero): (1, 0)}  # (m1, m2) -> (coeff, parity of factor 2 so far)
    for s in range(U.n_slots):
        e = m[s]
        if not e:
            continue
        new: dict = {}

        def put(m1, m2, c, par2):
            prev = new.get((m1, m2))
            if prev is None:
                new[(m1, m2)] = (c, par2)
            else:
                new[(m1, m2)] = (F.add(prev[0], c), par2)

        if U.slot_parity[s] == 0:
            for (m1, m2), (c, par2) in terms.items():
                for a1 in range(e + 1):
                    coeff = F.mul(c, math.comb(e, a1) % U.p)
                    if not coeff:
                        continue
                    n1, n2 = list(m1), list(m2)
                    n1[s] += a1
                    n2[s] += e - a1
                    put(tuple(n1), tuple(n2), coeff, par2)
        else:
            for (m1, m2), (c, par2) in terms.items():
                # letter to factor 1: hops over the odd part of factor 2
                c1 = F.neg(c) if par2 else c
                n1 = list(m1)
                n1[s] = 1
                put(tuple(n1), m2, c1, par2)
                # letter to factor 2
                n2 = list(m2)
                n2[s] = 1
                put(m1, tuple(n2), c, par2 ^ 1)
        terms = new
    return {k: c for k, (c, _) in terms.items() if c}


def comultiply(U: DeformedAlgebra, a: dict) -> dict:
    F = U.F
    out: dict = {}
    for m, c in a.items():
        for pair, v in comultiply_monomial(U, m).items():
            cur = out.get(pair)
            nv = F.add(cur, F.mul(c, v)) if cur is not None else F.mul(c, v)
            if nv:
                out[pair] = nv
            elif cur is not None:
                del out[pair]
    return out


def check_coassociativity(U: DeformedAlgebra, monomials: Sequence[tuple]) -> bool:
    F = U.F
    for m in monomials:
        delta = comultiply_monomial(U, m)
        left: dict = {}
        right: dict = {}
        for (m1, m2), c in delta.items():
            for (a, b), v in comultiply_monomial(U, m1).items():
                key = (a, b, m2)
                left[key] = F.add(left.get(key, 0), F.mul(c, v))
            for (a, b), v in comultiply_monomial(U, m2).items():
                key = (m1, a, b)
                right[key] = F.add(right.get(key, 0), F.mul(c, v))
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if left != right:
            return False
    return True


# ---------------------------------------------------------------------------
# coinduced function algebras


class CoinducedAlgebra:
    """F(g, q): q-linear functionals on U_chi(g), an algebra under the coproduct.

    Requires chi to vanish on q so that the one-dimensional trivial q-module
    exists; the PBW order puts q first, and the dual basis f_(a,b) over coset
    monomials satisfies f_(a,b)(e^(a',b')) = a! * delta.
    """

    def __init__(self, g: LieSuperalgebra, q_indices: Sequence[int],
                 chi: Optional[PCharacter] = None):
        self.g = g
        self.F = g.F
        if chi is None:
            chi = g.chi_zero()
        q_indices = list(q_indices)
        if len(set(q_indices)) != len(q_indices):
            raise ValueError("duplicate indices in the subalgebra")
        self._validate_subalgebra(q_indices)
        if any(chi.values[i] for i in q_indices):
            raise ValueError("chi must vanish on the subalgebra")
        coset = [i for i in range(g.dim) if i not in set(q_indices)]
        coset_even = [i for i in coset if g.parities[i] == 0]
        coset_odd = [i for i in coset if g.parities[i] == 1]
        order = q_indices + coset_even + coset_odd
        self.q_indices = q_indices
        self.n_q = len(q_indices)
        self.U = DeformedAlgebra(g, chi, lam=1, order=order)
        self.coset_slots = list(range(self.n_q, g.dim))
        caps = [self.U.slot_cap[s] for s in self.coset_slots]
        self.basis = [tuple(t) for t in itertools.product(*[range(c) for c in caps])]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self._norms = [self._norm(b) for b in self.basis]
        self._parities = [self._parity(b) for b in self.basis]

    def _validate_subalgebra(self, idxs: Sequence[int]) -> None:
        g = self.g
        inside = set(idxs)
        for i in idxs:
            for j in idxs:
                support = set(int(k) for k in np.nonzero(g.bracket_tensor[i, j])[0])
                if not support <= inside:
                    raise ValueError("indices do not span a subalgebra")
            if g.parities[i] == 0:
                support = set(int(k) for k in np.nonzero(g.p_map[i])[0])
                if not support <= inside:
                    raise ValueError("subalgebra is not closed under the p-power map")

    # -- indexing helpers ------------------------------------------------------

    def _norm(self, coset_exps: tuple) -> int:
        total = 1
        for e in coset_exps:
            total = (total * math.factorial(e)) % self.g.p
        return total % self.F.q

    def _parity(self, coset_exps: tuple) -> int:
        par = 0
        for s, e in zip(self.coset_slots, coset_exps):
            if e and self.U.slot_parity[s]:
                par ^= e & 1
        return par

    def full_monomial(self, coset_exps: tuple) -> tuple:
        m = [0] * self.U.n_slots
        for s, e in zip(self.coset_slots, coset_exps):
            m[s] = e
        return tuple(m)

    def split(self, m: tuple) -> Optional[tuple]:
        """Coset exponents if the q-part of m is trivial, else None."""
        if any(m[s] for s in range(self.n_q)):
            return None
        return tuple(m[s] for s in self.coset_slots)

    def dimension(self) -> int:
        return len(self.basis)

    def identity(self) -> dict:
        return {(0,) * len(self.coset_slots): 1}

    def dual_basis_element(self, coset_exps: tuple) -> dict:
        return {tuple(coset_exps): 1}

    def element_parity(self, f: dict) -> Optional[int]:
        pars = {self._parities[self.index[b]] for b in f}
        if len(pars) == 1:
            return pars.pop()
        return None if pars else 0

    # -- evaluation and algebra structure --------------------------------------

    def evaluate(self, f: dict, u: dict) -> int:
        """Apply the functional f to an element u of U_chi(g)."""
        F = self.F
        total = 0
        for m, c in u.items():
            coset = self.split(m)
            if coset is None:
                continue
            fv = f.get(coset)
            if fv:
                total = F.add(total, F.mul(F.mul(c, fv), self._norms[self.index[coset]]))
        return total

    def _homogeneous_parts(self, f: dict) -> list[tuple[int, dict]]:
        parts: dict = {0: {}, 1: {}}
        for b, c in f.items():
            parts[self._parities[self.index[b]]][b] = c
        return [(par, el) for par, el in parts.items() if el]

    def multiply(self, f1: dict, f2: dict) -> dict:
        F = self.F
        out: dict = {}
        for par2, g2 in self._homogeneous_parts(f2):
            for _, g1 in self._homogeneous_parts(f1):
                for e, idx in self.index.items():
                    full = self.full_monomial(e)
                    val = 0
                    for (m1, m2), c in comultiply_monomial(self.U, full).items():
                        v1 = self.evaluate(g1, {m1: 1})
                        if not v1:
                            continue
                        v2 = self.evaluate(g2, {m2: 1})
                        if not v2:
                            continue
                        term = F.mul(c, F.mul(v1, v2))
                        if par2 and self.U.monomial_parity(m1):
                            term = F.neg(term)
                        val = F.add(val, term)
                    if val:
                        coeff = F.div(val, self._norms[idx])
                        cur = out.get(e)
                        nv = F.add(cur, coeff) if cur is not None else coeff
                        if nv:
                            out[e] = nv
                        elif cur is not None:
                            del out[e]
        return out

    def act(self, basis_idx: int, f: dict) -> dict:
        """(x . f)(e) = (-1)^{|x|(|f| + |e|)} f(e x)."""
        F = self.F
        px = int(self.g.parities[basis_idx])
        out: dict = {}
        for parf, part in self._homogeneous_parts(f):
            for e, idx in self.index.items():
                shifted = self.U.mul_by_gen({self.full_monomial(e): 1}, basis_idx)
                val = self.evaluate(part, shifted)
                if not val:
                    continue
                if px and (parf ^ self._parities[idx]):
                    val = F.neg(val)
                coeff = F.div(val, self._norms[idx])
                cur = out.get(e)
                nv = F.add(cur, coeff) if cur is not None else coeff
                if nv:
                    out[e] = nv
                elif cur is not None:
                    del out[e]
        return out

    def duality_check(self) -> bool:
        """f_(a,b)(e^(a',b')) = a! delta on the full dual-basis grid."""
        for b1 in self.basis:
            f = self.dual_basis_element(b1)
            for b2 in self.basis:
                val = self.evaluate(f, {self.full_monomial(b2): 1})
                expected = self._norms[self.index[b1]] if b1 == b2 else 0
                if val != expected:
                    return False
        return True

    def to_vector(self, f: dict) -> np.ndarray:
        v = la.zeros(len(self.basis))
        for b, c in f.items():
            v[self.index[b]] = c
        return v

    def operator_model(self) -> "OperatorModel":
        n = len(self.basis)
        F = self.F
        mult_ops = []
        for b in self.basis:
            gen = self.dual_basis_element(b)
            mat = la.zeros((n, n))
            for b2 in self.basis:
                out = self.multiply(gen, self.dual_basis_element(b2))
                for bb, c in out.items():
                    mat[self.index[bb], self.index[b2]] = c
            mult_ops.append(mat)
        action_ops = []
        for i in range(self.g.dim):
            mat = la.zeros((n, n))
            for b2 in self.basis:
                out = self.act(i, self.dual_basis_element(b2))
                for bb, c in out.items():
                    mat[self.index[bb], self.index[b2]] = c
            action_ops.append(mat)
        sigma = la.zeros((n, n))
        for i, par in enumerate(self._parities):
            sigma[i, i] = F.neg(1) if par else 1
        parities = np.array(self._parities, dtype=np.int64)
        aug = la.zeros(n)
        aug[self.index[(0,) * len(self.coset_slots)]] = 1
        return OperatorModel(F, n, parities, mult_ops, action_ops, sigma, aug)

    def is_g_simple(self) -> bool:
        model = self.operator_model()
        ideal = largest_proper_invariant_ideal(model)
        return ideal.shape[0] == 0


# ---------------------------------------------------------------------------
# invariant ideals through operator models


class OperatorModel:
    """A finite-dimensional algebra-with-g-action given by dense operators.

    mult_ops generate the (two-sided, since the parity involution sigma is
    always included) multiplication action; action_ops give the g-action;
    aug_vector is the augmentation functional cutting out the maximal ideal.
    """

    def __init__(self, F: Field, n: int, parities: np.ndarray,
                 mult_ops: list, action_ops: list, sigma: np.ndarray,
                 aug_vector: np.ndarray):
        self.F = F
        self.n = n
        self.parities = parities
        self.mult_ops = mult_ops
        self.action_ops = action_ops
        self.sigma = sigma
        self.aug_vector = aug_vector

    def all_ops(self) -> list:
        return self.mult_ops + self.action_ops + [self.sigma]

    def max_ideal_rows(self) -> np.ndarray:
        return la.nullspace(self.F, self.aug_vector.reshape(1, -1))


def operator_model_from_symmetric(S: DeformedAlgebra) -> OperatorModel:
    """Operator model of a reduced symmetric algebra S_xi (lam must be 0)."""
    if S.lam != 0:
        raise ValueError("augmentation requires the symmetric member lam = 0")
    F = S.F
    index = S.monomial_index()
    n = len(index)
    mult_ops = [S.left_mult_matrix(i, index) for i in range(S.g.dim)]
    mult_ops += [S.right_mult_matrix(i, index) for i in range(S.g.dim)]
    action_ops = [S.action_matrix(i, index) for i in range(S.g.dim)]
    sigma = S.parity_matrix(index)
    parities = np.zeros(n, dtype=np.int64)
    aug = la.zeros(n)
    for m, i in index.items():
        parities[i] = S.monomial_parity(m)
        if parities[i] == 0 and all(
            e == 0 for s, e in enumerate(m) if S.slot_parity[s]
        ):
            val = 1
            for s, e in enumerate(m):
                if e:
                    val = F.mul(val, F.pow_int(int(S.xi.values[S.order[s]]), e))
            aug[i] = val
        # monomials with odd letters evaluate to zero under the augmentation
    return OperatorModel(F, n, parities, mult_ops, action_ops, sigma, aug)


def largest_proper_invariant_ideal(model: OperatorModel) -> np.ndarray:
    """Largest g-stable graded ideal inside the maximal ideal, as row basis."""
    ambient = model.max_ideal_rows()
    return la.largest_stable_subspace(model.F, ambient, model.all_ops())


def invariant_ideal_closure(model: OperatorModel, seed_rows: np.ndarray) -> np.ndarray:
    """Smallest g-stable graded ideal containing the seed vectors."""
    return la.closure_under_operators(model.F, seed_rows, model.all_ops())


def graded_codims(model: OperatorModel, ideal_rows: np.ndarray) -> tuple[int, int, int]:
    """(even codim, odd codim, total codim) of a graded subspace."""
    n = model.n
    even_idx = np.nonzero(model.parities == 0)[0]
    odd_idx = np.nonzero(model.parities == 1)[0]

    def coord_rows(idx):
        rows = la.zeros((idx.size, n))
        for r, i in enumerate(idx):
            rows[r, i] = 1
        return rows

    if ideal_rows.shape[0] == 0:
        return even_idx.size, odd_idx.size, n
    even_part = la.intersect_row_spaces(model.F, ideal_rows, coord_rows(even_idx))
    odd_part = la.intersect_row_spaces(model.F, ideal_rows, coord_rows(odd_idx))
    c0 = even_idx.size - even_part.shape[0]
    c1 = odd_idx.size - odd_part.shape[0]
    total = n - la.rank(model.F, ideal_rows)
    if c0 + c1 != total:
        raise RuntimeError("subspace is not graded")
    return c0, c1, total


def ideal_survey(S: DeformedAlgebra, divisor: int, d_pair: tuple[int, int],
                 seeds: int = 20, rng: Optional[np.random.Generator] = None) -> dict:
    """Codimension report for the largest invariant ideal and random closures.

    divisor and d_pair = (d0, d1) come from the centralizer of xi; each
    closure codimension is tested for divisibility by divisor, and the
    largest-ideal codimensions are compared to the graded bound.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    model = operator_model_from_symmetric(S)
    top = largest_proper_invariant_ideal(model)
    c0, c1, total = graded_codims(model, top)
    d0, d1 = d_pair
    report = {
        "algebra": S.g.label,
        "p": S.p,
        "dim": model.n,
        "largest_ideal_codim": total,
        "largest_ideal_codim_even": c0,
        "largest_ideal_codim_odd": c1,
        "graded_bound_holds": bool(c0 >= d0 and c1 >= d1),
        "divisor": divisor,
        "largest_divisible": total % divisor == 0,
        "closures": [],
    }
    ambient = model.max_ideal_rows()
    for nseed in range(seeds):
        # alternate seeds from the maximal ideal and from the largest
        # invariant ideal, so some closures have nontrivial codimension
        pool = top if (nseed % 2 and top.shape[0]) else ambient
        coeffs = rng.integers(0, S.F.q, pool.shape[0])
        seed = la.zeros(model.n)
        for c, row in zip(coeffs, pool):
            seed = S.F.add_arr(seed, S.F.smul_arr(int(c), row))
        if not seed.any():
            seed = pool[0].copy()
        closure = invariant_ideal_closure(model, seed.reshape(1, -1))
        cc0, cc1, ctotal = graded_codims(model, closure)
        report["closures"].append({
            "codim": ctotal,
            "codim_even": cc0,
            "codim_odd": cc1,
            "divisible": ctotal % divisor == 0,
        })
    report["all_closures_divisible"] = all(c["divisible"] for c in report["closures"])
    return report

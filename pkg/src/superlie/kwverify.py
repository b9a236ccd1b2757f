"""Dimension-divisibility verification for simple heads of baby Vermas.

For a p-character chi, the graded codimension pair (d0, d1) of its
stabilizer determines the divisor p^(d0/2) * 2^(floor(d1/2)); the
super Kac-Weisfeiler statement is that this divides the dimension of
every finite-dimensional module with that character.  This module
harvests the simple heads produced by the Verma machinery across the
full weight set of each character, classifies each head as Walls type M
or Q by solving for an odd module endomorphism, and reports exact
integer divisibility, including the ceiling-variant bookkeeping used for
type-Q heads (dim/2 divisible by p^(d0/2) * 2^(ceil(d1/2) - 1)).

Characters outside the reach of the Verma pipeline are skipped with an
explicit reason rather than silently dropped: chi must vanish on the
positive nilradical of the chosen Borel, and reducible modules need a
certified unique maximal submodule for the head to be well defined.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .gf import Field
from .liesuper import LieSuperalgebra, PCharacter
from .rootsys import SimpleSystem
from .verma import VermaSystem, lambda_set


def kw_divisor(g: LieSuperalgebra, chi: PCharacter) -> int:
    """p^(d0/2) * 2^(floor(d1/2)) from the stabilizer codimensions."""
    cent = g.centralizer(chi)  # raises when d0 is odd
    return g.p ** (cent.d0 // 2) * 2 ** (cent.d1 // 2)


def kw_divisor_ceiling(g: LieSuperalgebra, chi: PCharacter) -> int:
    """The ceiling variant p^(d0/2) * 2^(ceil(d1/2))."""
    cent = g.centralizer(chi)
    return g.p ** (cent.d0 // 2) * 2 ** ((cent.d1 + 1) // 2)


def walls_type(F: Field, action_matrices: Sequence[np.ndarray],
               parity_op: np.ndarray, parities: Sequence[int],
               check_simple: bool = True) -> str:
    """"Q" when the module admits an odd endomorphism, else "M".

    An odd endomorphism T satisfies T rho(a) = (-1)^|a| rho(a) T and
    anticommutes with the parity involution.  With ``check_simple`` the
    input is screened for visible reducibility: every basis vector must
    generate the whole space under the action (direct sums and radical
    vectors fail this; the callers' heads are simple by construction).
    """
    n = parity_op.shape[0]
    if check_simple:
        for i in range(n):
            seed = la.eye(n)[i][None, :]
            closed = la.closure_under_operators(F, seed, action_matrices, dim_cap=n)
            if closed.shape[0] != n:
                raise ValueError(
                    f"basis vector {i} generates a proper submodule — input is reducible"
                )
    even_ops = [m for m, pr in zip(action_matrices, parities) if pr == 0]
    odd_ops = [m for m, pr in zip(action_matrices, parities) if pr == 1]
    _, o_dim = la.commutant_dim(F, even_ops, odd_ops, parity_op)
    return "Q" if o_dim else "M"


def parity_shift_glue(F: Field, action_matrices: Sequence[np.ndarray],
                      parity_op: np.ndarray, parities: Sequence[int]):
    """A module glued to its parity shift; carries a designed odd symmetry.

    The shifted copy negates the odd action matrices, so the swap of the
    two copies is an odd endomorphism and the glued module has type Q.
    """
    n = parity_op.shape[0]
    glued = []
    for m, pr in zip(action_matrices, parities):
        b = la.zeros((2 * n, 2 * n))
        b[:n, :n] = m
        b[n:, n:] = F.neg_arr(m) if pr else m
        glued.append(b)
    gp = la.zeros((2 * n, 2 * n))
    gp[:n, :n] = parity_op
    gp[n:, n:] = F.neg_arr(parity_op)
    return glued, gp


class KWReport:
    """Divisibility evidence for one (algebra, chi) pair."""

    def __init__(self, g: LieSuperalgebra, chi: PCharacter, *,
                 skipped: Optional[str] = None):
        self.algebra = g.label
        self.p = g.p
        self.chi_values = [int(v) for v in chi.values]
        self.chi_cartan = list(chi.cartan_values())
        self.standard_form = chi.is_standard_form()
        self.skipped = skipped
        if skipped is None:
            cent = g.centralizer(chi)
            self.d0, self.d1 = cent.d0, cent.d1
            self.divisor = g.p ** (cent.d0 // 2) * 2 ** (cent.d1 // 2)
            self.divisor_ceiling = g.p ** (cent.d0 // 2) * 2 ** ((cent.d1 + 1) // 2)
        else:
            self.d0 = self.d1 = self.divisor = self.divisor_ceiling = None
        self.simple_dims: list[tuple[tuple, int, str]] = []
        self.all_divisible: Optional[bool] = None
        self.accounting_ok: Optional[bool] = None

    def add_head(self, lam: tuple, head_dim: int, wtype: str) -> None:
        self.simple_dims.append((tuple(int(v) for v in lam), int(head_dim), wtype))

    def finalize(self) -> None:
        if self.skipped is not None:
            return
        self.simple_dims.sort()
        self.all_divisible = all(d % self.divisor == 0 for _, d, _ in self.simple_dims)
        half = self.divisor_ceiling // 2 if self.divisor_ceiling > 1 else 1
        ok = True
        for _, d, wtype in self.simple_dims:
            if wtype == "M":
                ok = ok and d % self.divisor == 0
            else:
                ok = ok and d % 2 == 0 and (d // 2) % half == 0
        self.accounting_ok = ok

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "p": self.p,
            "chi": self.chi_values,
            "chi_cartan": self.chi_cartan,
            "standard_form": self.standard_form,
            "skipped": self.skipped,
            "d0": self.d0,
            "d1": self.d1,
            "divisor": self.divisor,
            "divisor_ceiling": self.divisor_ceiling,
            "simple_dims": [[list(l), d, t] for l, d, t in self.simple_dims],
            "all_divisible": self.all_divisible,
            "accounting_ok": self.accounting_ok,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _head_of(Z) -> tuple[int, str]:
    """(head dimension, Walls type) via the certified maximal submodule."""
    mats, parity_op, _ = Z.quotient_representation()
    hdim = mats[0].shape[0]
    wtype = walls_type(Z.F, mats, parity_op, list(Z.g.parities), check_simple=False)
    return hdim, wtype


def verify_superkw_sweep(g: LieSuperalgebra, chi_list: Sequence[PCharacter],
                         k_max: int = 8) -> list[KWReport]:
    """One KWReport per chi, harvesting heads over the whole weight set.

    The sweep is deterministic: weight sets are enumerated in sorted
    order and each report's entries are sorted by lambda.
    """
    reports = []
    for chi in chi_list:
        try:
            system = VermaSystem(g, chi)
        except ValueError as exc:
            rep = KWReport(g, chi, skipped=f"no compatible Borel: {exc}")
            reports.append(rep)
            continue
        rep = KWReport(g, chi)
        lset = lambda_set(g, chi, k_max)
        try:
            for lam in lset:
                Z = system.module(lam, lset.field)
                hdim, wtype = _head_of(Z)
                if chi.is_standard_form():
                    # closure-of-lowest oracle must agree with the head
                    if Z.is_irreducible_oracle() != (hdim == Z.dim):
                        raise RuntimeError("head/oracle disagreement on standard chi")
                rep.add_head(lam, hdim, wtype)
        except RuntimeError as exc:
            reports.append(KWReport(g, chi, skipped=str(exc)))
            continue
        rep.finalize()
        reports.append(rep)
    return reports


def write_jsonl(reports: Sequence[KWReport], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rep in reports:
            fh.write(rep.to_json_line() + "\n")


def summary_table(reports: Sequence[KWReport]) -> str:
    """Aggregate table, one line per (algebra, chi)."""
    lines = ["algebra      p  chi                divisor  heads                verdict"]
    for rep in reports:
        chi = ",".join(str(v) for v in rep.chi_cartan)
        if not rep.standard_form:
            chi += "*"
        if rep.skipped is not None:
            lines.append(
                f"{rep.algebra:<12} {rep.p}  {chi:<18} {'-':<8} "
                f"{'-':<20} skipped: {rep.skipped}"
            )
            continue
        dims = sorted({d for _, d, _ in rep.simple_dims})
        heads = ",".join(str(d) for d in dims)
        verdict = "pass" if rep.all_divisible and rep.accounting_ok else "FAIL"
        lines.append(
            f"{rep.algebra:<12} {rep.p}  {chi:<18} {rep.divisor:<8} "
            f"{heads:<20} {verdict}"
        )
    return "\n".join(lines)

# Counting: closed-form code parameters, the per-mode segment counts and
# their closed form, the implicit parameter sums, and the special operating
# points of the storage-bandwidth trade-off

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .combin import binomial


@dataclass(frozen=True)
class CodeParams:
    """Per-node storage alpha, per-helper bandwidth beta, and file size F."""

    k: int
    d: int
    mu: int
    alpha: int
    beta: int
    file_size: int

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.file_size)


def _validate(k: int, d: int, mu: int):
    if not 1 <= mu <= k <= d:
        raise ValueError(f"need 1 <= mu <= k <= d, got (k, d, mu) = ({k}, {d}, {mu})")


def code_params(k: int, d: int, mu: int) -> CodeParams:
    """Closed-form parameters (alpha, beta, F) of the mode-mu code.

    alpha = sum_m (d-k)^{mu-m} C(k,m), beta = sum_m (d-k)^{mu-m} C(k-1,m-1),
    and F = k*alpha - C(k, mu+1), all exact integers.

    Raises:
        ValueError: Unless 1 <= mu <= k <= d.
    """
    _validate(k, d, mu)
    alpha = sum((d - k) ** (mu - m) * binomial(k, m) for m in range(mu + 1))
    beta = sum((d - k) ** (mu - m) * binomial(k - 1, m - 1) for m in range(mu + 1))
    file_size = k * alpha - binomial(k, mu + 1)
    return CodeParams(k=k, d=d, mu=mu, alpha=alpha, beta=beta, file_size=file_size)


def t_sequence(k: int, d: int, mu: int) -> tuple[int, ...]:
    """Per-mode segment counts (t_0, ..., t_mu) of the injection tree.

    t_mu = 1 (the root); below that each mode-j segment contributes
    (j-m-1) C(d-k+1, j-m) mode-m children, so
    t_m = sum_{j=m+1}^{mu} t_j (j-m-1) C(d-k+1, j-m).
    """
    _validate(k, d, mu)
    t = [0] * (mu + 1)
    t[mu] = 1
    for m in range(mu - 1, -1, -1):
        t[m] = sum(t[j] * (j - m - 1) * binomial(d - k + 1, j - m)
                   for j in range(m + 1, mu + 1))
    return tuple(t)


def p_closed_form(d_minus_k: int, m: int) -> int:
    """Closed form of the reversed count sequence p_m = t_{mu - m}.

    p_m = sum_{l=0}^{m} (-1)^l (d-k)^{m-l} C(d-k+l-1, l). Depends on (k, d)
    only through their difference, so the degenerate d = k case rides on
    C(-1, 0) = 1.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    w = d_minus_k
    return sum((-1) ** ell * w ** (m - ell) * binomial(w + ell - 1, ell)
               for ell in range(m + 1))


def params_implicit(k: int, d: int, mu: int) -> CodeParams:
    """Parameters summed segment-by-segment from the t_m counts.

    alpha = sum t_m C(d,m); beta = sum t_m C(d-1,m-1);
    F = sum t_m m [C(d+1,m+1) - C(d-k+1,m+1)]. Must agree with code_params.
    """
    t = t_sequence(k, d, mu)
    alpha = sum(t[m] * binomial(d, m) for m in range(mu + 1))
    beta = sum(t[m] * binomial(d - 1, m - 1) for m in range(mu + 1))
    file_size = sum(t[m] * m * (binomial(d + 1, m + 1) - binomial(d - k + 1, m + 1))
                    for m in range(mu + 1))
    return CodeParams(k=k, d=d, mu=mu, alpha=alpha, beta=beta, file_size=file_size)


class SpecialPoints(NamedTuple):
    mbr: CodeParams
    msr: CodeParams
    cutset: CodeParams
    cutset_identity_holds: bool


def special_points(k: int, d: int) -> SpecialPoints:
    """The three distinguished operating points of the trade-off.

    MBR is mu=1 with (d, 1, k(2d-k+1)/2); MSR is mu=k with
    ((d-k+1)^k, (d-k+1)^{k-1}, k(d-k+1)^k); and at mu=k-1 the parameters
    satisfy the cut-set identity F = (k-1) alpha + (d-k+1) beta, reported as
    a boolean.

    Raises:
        ValueError: If k < 2 (the mu = k-1 point needs mu >= 1).
    """
    if k < 2:
        raise ValueError("special points need k >= 2")
    mbr = code_params(k, d, 1)
    msr = code_params(k, d, k)
    cutset = code_params(k, d, k - 1)
    holds = cutset.file_size == (k - 1) * cutset.alpha + (d - k + 1) * cutset.beta
    return SpecialPoints(mbr=mbr, msr=msr, cutset=cutset, cutset_identity_holds=holds)


def overlap_dimension_formula(k: int, d: int, mu: int, form: str = "proof") -> int:
    """Predicted dimension of the overlap of two repair spaces from one helper.

    The closed form circulates in two variants that disagree in one sign,
    so both are available and the measured-rank check arbitrates:

    * "proof": sum_m t_m [2 C(d-1,m-1) - C(d,m) + C(d-2,m)], the
      per-segment d-domain sum weighted by the segment counts.
    * "statement": sum_m (d-k)^{mu-m} [2 C(k-1,m-1) - C(k,m) - C(k-2,m)],
      the k-domain sum whose trailing term carries the opposite sign.

    Raises:
        ValueError: On an unknown form name or invalid parameters.
    """
    _validate(k, d, mu)
    if form == "proof":
        t = t_sequence(k, d, mu)
        return sum(t[m] * (2 * binomial(d - 1, m - 1) - binomial(d, m) + binomial(d - 2, m))
                   for m in range(mu + 1))
    if form == "statement":
        return sum((d - k) ** (mu - m)
                   * (2 * binomial(k - 1, m - 1) - binomial(k, m) - binomial(k - 2, m))
                   for m in range(mu + 1))
    raise ValueError(f"unknown form {form!r}, expected 'proof' or 'statement'")

# The end-to-end code path: encoder matrices, node shares, compressed repair
# messages, exact regeneration of a failed node, and data recovery from any
# k shares

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .cascade import (
    HierarchyTree,
    SuperMessage,
    build_super_message,
    layout_from_tree,
    segment_offsets,
)
from .combin import binomial, ind_count, subset_rank, subsets_lex
from .detseg import (
    D_GROUP,
    N_GROUP,
    SegmentSpec,
    classify_entry,
    det_repair_symbol,
    repair_encoder,
)
from .fqlinalg import Field, column_basis, mat_inverse, mat_mul, mat_rank, solve_exact


@dataclass(frozen=True)
class EncoderMatrix:
    """An n x d encoder Psi = [Gamma | Upsilon] over a fixed field.

    A valid encoder has every k x k submatrix of Gamma invertible (E1) and
    every d x d submatrix of Psi invertible (E2).
    """

    field: Field
    psi: NDArray[np.int64]

    @property
    def n(self) -> int:
        return self.psi.shape[0]

    @property
    def d(self) -> int:
        return self.psi.shape[1]

    def row(self, i: int) -> NDArray[np.int64]:
        """Row of node i, 1-based."""
        return self.psi[i - 1]

    def rows(self, indices: Sequence[int]) -> NDArray[np.int64]:
        """Stacked rows of the given 1-based node indices, in the given order."""
        return self.psi[[i - 1 for i in indices]]

    def gamma(self, k: int) -> NDArray[np.int64]:
        """Left n x k block."""
        return self.psi[:, :k]

    def upsilon(self, k: int) -> NDArray[np.int64]:
        """Right n x (d-k) block."""
        return self.psi[:, k:]


@dataclass(frozen=True)
class NodeShare:
    """Coded content of one node: Psi_{i,:} . M, alpha elements in M order."""

    index: int
    payload: NDArray[np.int64]


def vandermonde_encoder(field: Field, n: int, d: int) -> EncoderMatrix:
    """Vandermonde encoder with evaluation points 0..n-1.

    Row i is (1, x_i, x_i^2, ..., x_i^{d-1}) with x_i = i - 1. Distinct
    points make every d x d minor, and every k x k minor of the left block,
    invertible.

    Raises:
        ValueError: If the field has fewer than n elements.
    """
    if field.q < n:
        raise ValueError(f"field order {field.q} is too small for {n} distinct "
                         "evaluation points")
    psi = np.ones((n, d), dtype=np.int64)
    for i in range(n):
        for e in range(1, d):
            psi[i, e] = field.mul(psi[i, e - 1], i)
    return EncoderMatrix(field=field, psi=psi)


def semi_systematize(enc: EncoderMatrix, k: int) -> EncoderMatrix:
    """Equivalent encoder whose top k x d block is [I | 0].

    Multiplies Psi on the right by X = [[A^-1, -A^-1 B], [0, I]] built from
    the top blocks A = Psi[:k,:k] and B = Psi[:k,k:]. The transform preserves
    both encoder conditions, and with it the first k shares are rows of M.
    """
    field = enc.field
    d = enc.d
    a_inv = mat_inverse(field, enc.psi[:k, :k])
    top_right = field.neg(mat_mul(field, a_inv, enc.psi[:k, k:]))
    x = np.zeros((d, d), dtype=np.int64)
    x[:k, :k] = a_inv
    x[:k, k:] = top_right
    x[k:, k:] = np.eye(d - k, dtype=np.int64)
    return EncoderMatrix(field=field, psi=mat_mul(field, enc.psi, x))


def encoder_conditions_hold(enc: EncoderMatrix, k: int) -> bool:
    """Exhaustively check E1 (k x k minors of Gamma) and E2 (d x d minors of Psi)."""
    field = enc.field
    n, d = enc.n, enc.d
    gamma = enc.gamma(k)
    for rows in itertools.combinations(range(n), k):
        if mat_rank(field, gamma[list(rows)]) != k:
            return False
    for rows in itertools.combinations(range(n), d):
        if mat_rank(field, enc.psi[list(rows)]) != d:
            return False
    return True


def encode(enc: EncoderMatrix, sm: SuperMessage) -> list[NodeShare]:
    """Multiply the encoder into M: share i is Psi_{i,:} . M.

    Raises:
        ValueError: On a field or dimension mismatch.
    """
    if enc.field.q != sm.field.q:
        raise ValueError("encoder and super-message use different fields")
    if enc.d != sm.tree.d:
        raise ValueError(f"encoder width {enc.d} does not match d = {sm.tree.d}")
    codewords = mat_mul(enc.field, enc.psi, sm.matrix)
    return [NodeShare(index=i + 1, payload=codewords[i].copy()) for i in range(enc.n)]


@dataclass(frozen=True)
class RepairMessage:
    """What one helper sends toward one failed node.

    One block per segment in tree order; a mode-m block carries the
    C(d-1, m-1) coordinates of the helper's repair row in the deterministic
    pivot basis of the repair encoder, so mode-0 blocks are empty and the
    total length is beta.
    """

    failed: int
    helper: int
    modes: tuple[int, ...]
    blocks: tuple[NDArray[np.int64], ...]

    @property
    def total_symbols(self) -> int:
        return sum(len(b) for b in self.blocks)

    def to_bytes(self) -> bytes:
        """Wire layout: failed, helper, segment count (2B BE), then per
        segment its mode (1B) and its block as 2-byte big-endian elements."""
        out = bytearray()
        out.append(self.failed)
        out.append(self.helper)
        out += len(self.modes).to_bytes(2, "big")
        for mode, block in zip(self.modes, self.blocks):
            out.append(mode)
            for value in block:
                if not 0 <= int(value) < 65536:
                    raise ValueError("element does not fit in two bytes")
                out += int(value).to_bytes(2, "big")
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes, d: int) -> "RepairMessage":
        """Parse the wire layout; d fixes each mode's block length.

        Raises:
            ValueError: On truncated or oversized input.
        """
        if len(data) < 4:
            raise ValueError("repair message shorter than its header")
        failed, helper = data[0], data[1]
        count = int.from_bytes(data[2:4], "big")
        pos = 4
        modes = []
        blocks = []
        for _ in range(count):
            if pos >= len(data):
                raise ValueError("repair message truncated in a segment header")
            mode = data[pos]
            pos += 1
            width = binomial(d - 1, mode - 1)
            if pos + 2 * width > len(data):
                raise ValueError("repair message truncated in a segment block")
            block = np.array([int.from_bytes(data[pos + 2 * t:pos + 2 * t + 2], "big")
                              for t in range(width)], dtype=np.int64)
            pos += 2 * width
            modes.append(mode)
            blocks.append(block)
        if pos != len(data):
            raise ValueError("trailing bytes after the last segment block")
        return cls(failed=failed, helper=helper, modes=tuple(modes), blocks=tuple(blocks))


def _repair_basis(
    field: Field,
    lam: NDArray[np.int64],
) -> tuple[tuple[int, ...], NDArray[np.int64]]:
    # pivot columns of Lambda plus the change of basis T with
    # Lambda = Lambda[:, pivots] . T; both ends derive this independently
    _, pivots = column_basis(field, lam)
    t = solve_exact(field, lam[:, list(pivots)], lam)
    return pivots, t


def helper_repair_message(
    enc: EncoderMatrix,
    tree: HierarchyTree,
    share: NodeShare,
    failed: int,
) -> RepairMessage:
    """Compress helper h's contribution toward rebuilding node `failed`.

    Per mode-m segment, the helper's codeword slice times the repair encoder
    gives a row known to lie in the span of the encoder's pivot columns;
    only those C(d-1, m-1) coordinates are sent.

    Raises:
        ValueError: If the helper is the failed node itself.
    """
    if share.index == failed:
        raise ValueError("a node cannot help repair itself")
    field = enc.field
    d = tree.d
    offsets, alpha = segment_offsets(tree)
    if len(share.payload) != alpha:
        raise ValueError(f"share payload must have {alpha} elements")
    modes = []
    blocks = []
    for spec in tree.segments:
        m = spec.mode
        modes.append(m)
        if m == 0:
            blocks.append(np.zeros(0, dtype=np.int64))
            continue
        start = offsets[spec.segment_id]
        slice_ = share.payload[start:start + binomial(d, m)]
        lam = repair_encoder(field, enc.row(failed), spec.signature, m)
        full = mat_mul(field, slice_[None, :], lam)[0]
        pivots, _ = _repair_basis(field, lam)
        blocks.append(full[list(pivots)].copy())
    return RepairMessage(failed=failed, helper=share.index,
                         modes=tuple(modes), blocks=tuple(blocks))


def regenerate_node(
    enc: EncoderMatrix,
    tree: HierarchyTree,
    failed: int,
    helpers: Sequence[int],
    messages: Sequence[RepairMessage],
) -> NodeShare:
    """Rebuild the failed node's share from d helper messages, exactly.

    Per segment, the decompressed helper rows stack to Psi[H,:] . fQ . Lambda;
    left-multiplying by Psi[H,:]^-1 yields the repair space R(fQ). Column I
    of the failed row is then the alternating sum of R(fQ) entries, minus the
    parent correction R(fP)_{x, I+B} when I and B are disjoint (the root
    needs no correction).

    Raises:
        ValueError: Unless exactly d distinct helpers, none equal to the
            failed node, with one matching message each.
    """
    field = enc.field
    d = tree.d
    if len(helpers) != d or len(set(helpers)) != d:
        raise ValueError(f"need exactly d = {d} distinct helpers")
    if failed in helpers:
        raise ValueError("the failed node cannot be its own helper")
    if len(messages) != d:
        raise ValueError("need one repair message per helper")
    for h, msg in zip(helpers, messages):
        if msg.helper != h or msg.failed != failed:
            raise ValueError(f"message from node {msg.helper} for node {msg.failed} "
                             f"does not match helper {h} repairing {failed}")
    psi_h_inv = mat_inverse(field, enc.rows(helpers))

    spaces: list[NDArray[np.int64]] = []
    for spec in tree.segments:
        m = spec.mode
        if m == 0:
            spaces.append(np.zeros((d, 0), dtype=np.int64))
            continue
        lam = repair_encoder(field, enc.row(failed), spec.signature, m)
        _, t = _repair_basis(field, lam)
        stacked = np.vstack([
            mat_mul(field, msg.blocks[spec.segment_id][None, :], t)
            for msg in messages
        ])
        spaces.append(mat_mul(field, psi_h_inv, stacked))

    offsets, alpha = segment_offsets(tree)
    payload = np.zeros(alpha, dtype=np.int64)
    for spec in tree.segments:
        start = offsets[spec.segment_id]
        space = spaces[spec.segment_id]
        for c, i_set in enumerate(subsets_lex(d, spec.mode)):
            value = det_repair_symbol(field, space, i_set, spec.signature)
            if not spec.is_root:
                x, b = spec.injection_pair
                if not set(i_set) & set(b):
                    parent_col = subset_rank(d, tuple(sorted(set(i_set) | set(b))))
                    correction = spaces[spec.parent_id][x - 1, parent_col]
                    value = field.sub(value, correction)
            payload[start + c] = value
    return NodeShare(index=failed, payload=payload)


def extract_injection(
    field: Field,
    spec: SegmentSpec,
    f_mat: NDArray[np.int64],
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """Split a decoded post-injection segment fS into (eS, Delta).

    Every position that can host an injection (row i > max I with i outside
    B and I disjoint from B) is recomputed from the parity equation of its
    group, whose other members never host injections; the difference is the
    injection matrix. The root splits into (fS, 0).
    """
    if spec.is_root:
        return f_mat.copy(), np.zeros_like(f_mat)
    _, b = spec.injection_pair
    bset = set(b)
    d, m = spec.d, spec.mode
    e_mat = f_mat.copy()
    for c, i_set in enumerate(subsets_lex(d, m)):
        if bset & set(i_set):
            continue
        lowest = i_set[-1] + 1 if i_set else 1
        for i in range(lowest, d + 1):
            if i in bset:
                continue
            y_full = i_set + (i,)
            acc = np.int64(0)
            for t in i_set:
                src = subset_rank(d, tuple(e for e in y_full if e != t))
                sign = field.signed_unit(spec.signature[t - 1] + ind_count(y_full, t))
                acc = field.add(acc, field.mul(sign, f_mat[t - 1, src]))
            e_mat[i - 1, c] = field.mul(field.signed_unit(spec.signature[i - 1] + m), acc)
    delta = np.asarray(field.sub(f_mat, e_mat), dtype=np.int64)
    return e_mat, delta


def recover_data(
    enc: EncoderMatrix,
    tree: HierarchyTree,
    observers: Sequence[int],
    shares: Sequence[NodeShare],
) -> NDArray[np.int64]:
    """Recover the original file symbols from any k shares.

    Segments are decoded mode-ascending; within a segment, columns run in
    reverse-lexicographic order. Bottom rows resolve by group: injected-data
    entries are read back out of the already-decoded child's injection
    matrix, nulled entries are zero, and parity entries are rebuilt from
    their group plus, when the segment's own injection pair admits one, the
    injected symbol fetched from a decoded sibling. Top rows then follow by
    inverting the k x k encoder block against the observed codewords. Each
    finished segment is split into (eS, Delta) for its parents' and
    siblings' lookups, and the file is read out of the eS matrices.

    Args:
        enc: Encoder the shares were produced with.
        tree: Segment tree of the code.
        observers: The k live node indices.
        shares: One NodeShare per observer (any order).

    Raises:
        ValueError: Unless exactly k distinct observers with matching shares.
    """
    field = enc.field
    k, d = tree.k, tree.d
    if len(observers) != k or len(set(observers)) != k:
        raise ValueError(f"need exactly k = {k} distinct observer nodes")
    by_index = {share.index: share for share in shares}
    if sorted(by_index) != sorted(observers):
        raise ValueError("shares do not match the observer set")
    order_k = sorted(observers)
    offsets, alpha = segment_offsets(tree)
    observed = np.vstack([by_index[i].payload for i in order_k])
    if observed.shape[1] != alpha:
        raise ValueError(f"each share must carry {alpha} elements")

    gamma_k = enc.gamma(k)[[i - 1 for i in order_k]]
    upsilon_k = enc.upsilon(k)[[i - 1 for i in order_k]]
    gamma_inv = mat_inverse(field, gamma_k)

    extracted: dict[int, NDArray[np.int64]] = {}
    injections: dict[int, NDArray[np.int64]] = {}

    for sid in sorted(range(len(tree)), key=lambda s: (tree.segment(s).mode, s)):
        spec = tree.segment(sid)
        m = spec.mode
        cols = subsets_lex(d, m)
        mat = np.zeros((d, len(cols)), dtype=np.int64)
        col_obs = observed[:, offsets[sid]:offsets[sid] + len(cols)]
        for c in sorted(range(len(cols)), key=lambda i: cols[i], reverse=True):
            i_set = cols[c]
            for x in range(k + 1, d + 1):
                mat[x - 1, c] = _bottom_entry(field, tree, spec, i_set, x, mat, injections)
            # top rows: undo the k x k encoder block against the observation
            down = mat[k:, c][:, None]
            rhs = field.sub(col_obs[:, c][:, None], mat_mul(field, upsilon_k, down))
            mat[:k, c] = mat_mul(field, gamma_inv, rhs)[:, 0]
        e_mat, delta = extract_injection(field, spec, mat)
        extracted[sid] = e_mat
        injections[sid] = delta

    layout = layout_from_tree(tree)
    out = np.zeros(len(layout), dtype=np.int64)
    for pos, (sid, sym) in enumerate(layout):
        spec = tree.segment(sid)
        if sym.kind == "v":
            col = subset_rank(d, sym.index_set)
        else:
            col = subset_rank(d, tuple(e for e in sym.index_set if e != sym.x))
        sign = field.signed_unit(spec.signature[sym.x - 1])
        out[pos] = field.mul(sign, extracted[sid][sym.x - 1, col])
    return out


def _bottom_entry(field, tree, spec, i_set, x, mat, injections):
    # one bottom-row entry of fS at (x, I), by group dispatch
    k, d, m = spec.k, spec.d, spec.mode
    group = classify_entry(x, i_set, k)
    if group == N_GROUP:
        return np.int64(0)
    if group == D_GROUP:
        a = tuple(e for e in i_set if e <= k)
        b = tuple(e for e in i_set if e > k)
        child = tree.child_with_pair(spec.segment_id, (x, b))
        return _primary_symbol(field, spec.signature, a, b, injections[child])
    # parity entry: rebuild from the group, then add the injected symbol
    y_full = i_set + (x,)
    acc = np.int64(0)
    for t in i_set:
        src = subset_rank(d, tuple(e for e in y_full if e != t))
        sign = field.signed_unit(spec.signature[t - 1] + ind_count(y_full, t))
        acc = field.add(acc, field.mul(sign, mat[t - 1, src]))
    value = field.mul(field.signed_unit(spec.signature[x - 1] + m), acc)
    if spec.is_root:
        return value
    y, b_own = spec.injection_pair
    if x in b_own or set(i_set) & set(b_own):
        return value
    a = tuple(e for e in i_set if e <= k)
    if not a:
        # the injected symbol came from a nulled parent entry
        return value
    parent = tree.segment(spec.parent_id)
    b_full = tuple(sorted((set(i_set) - set(a)) | {x} | set(b_own)))
    sibling = tree.child_with_pair(parent.segment_id, (y, b_full))
    source = _primary_symbol(field, parent.signature, a, b_full, injections[sibling])
    j_set = tuple(sorted(set(i_set) | {x} | set(b_own)))
    sign = field.signed_unit(1 + parent.signature[x - 1] + ind_count(j_set, x))
    return field.add(value, field.mul(sign, source))


def _primary_symbol(field, parent_sigma, a, b, delta):
    # parent entry P_{x, A+B} read back out of the child's injection matrix
    # at (max A, A\{max A}); the primary-injection sign is self-inverse
    d = delta.shape[0]
    mx = a[-1]
    merged = tuple(sorted(set(a) | set(b)))
    sign = field.signed_unit(1 + parent_sigma[mx - 1] + ind_count(merged, mx))
    col = subset_rank(d, a[:-1])
    return field.mul(sign, delta[mx - 1, col])


def repair_overlap_dim(
    enc: EncoderMatrix,
    tree: HierarchyTree,
    helper: int,
    failed_a: int,
    failed_b: int,
) -> int:
    """Measured overlap of the helper's repair spaces toward two failures.

    Treats each transmitted repair symbol as a linear functional of the file
    and spans it over a full unit-file basis; the overlap is
    rank(A) + rank(B) - rank([A B]).

    Raises:
        ValueError: Unless helper and the two failed nodes are distinct.
    """
    if len({helper, failed_a, failed_b}) != 3:
        raise ValueError("helper and the two failed nodes must be distinct")
    field = enc.field
    k, d, mu = tree.k, tree.d, tree.mu
    layout = layout_from_tree(tree)
    lambdas = {}
    for target in (failed_a, failed_b):
        lambdas[target] = [
            repair_encoder(field, enc.row(target), spec.signature, spec.mode)
            for spec in tree.segments
        ]
    rows_a = []
    rows_b = []
    for j in range(len(layout)):
        unit = np.zeros(len(layout), dtype=np.int64)
        unit[j] = 1
        sm = build_super_message(field, k, d, mu, unit)
        for rows, target in ((rows_a, failed_a), (rows_b, failed_b)):
            parts = [
                mat_mul(field,
                        mat_mul(field, enc.row(helper)[None, :], sm.post_matrices[sid]),
                        lambdas[target][sid])[0]
                for sid in range(len(tree))
            ]
            rows.append(np.concatenate(parts))
    a = np.vstack(rows_a)
    b = np.vstack(rows_b)
    return mat_rank(field, a) + mat_rank(field, b) - mat_rank(field, np.hstack([a, b]))

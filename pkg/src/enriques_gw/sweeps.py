"""Vectorized large-box evaluation of the genus-1 recursion.

The per-class recursion in gw_engine is exact but slow when the box of
classes is large (tens of thousands of classes, each with tens of
thousands of decompositions).  Two observations make full boxes cheap:

1.  The value <1>_beta is constant on orbits of lattice isometries that
    fix v1.  Two families of such isometries are used here:

      * transvections along v1: for any a in the E8 block they preserve
        b2 and the square and translate the E8 part by b2 * a;
      * isometries of the E8 block (generated by its simple-root
        reflections), extended by the identity on the hyperbolic part.

    Hence (b2, square, orbit of the E8 part mod b2 under the reflection
    group) is a sound cache key: classes sharing it share their value.
    The induction proving this runs over (b2, square) in lexicographic
    order, which strictly decreases for every part in the recursion.

2.  The decomposition sum itself is, cell by cell in (b1', b2'), a scan
    over lattice points of the smaller of two balls (directly, or
    shifted by the class E8 part when the complement ball is smaller).
    Aggregating candidates by cache key with numpy leaves only a handful
    of exact Fraction multiplications per cell.

The module also contains the brute-force vs optimized decomposition
agreement sweep.  For every class in a coordinate box it compares, cell
shape by cell shape, the candidate set produced by a full short-vector
scan (box-oracle semantics) with the one produced by the smaller-ball
scan.  Cells whose complement is a multiple of v1 admit at most the one
candidate equal to the class E8 part itself (a radius-zero ball), so
they reduce to scalar predicates and are checked analytically.

Float32 matrix products are used for oracle cross terms; every such
product is an integer of magnitude far below 2**23, so they are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gw_engine import isotropic_genus1
from .lattice import CARTAN_E8, _short_vector_array

_CARTAN_NP = np.array(CARTAN_E8, dtype=np.int64)
_PACK_POWS = (64 ** np.arange(8)).astype(np.int64)

MAX_SWEEP_B2 = 6


def pack_rows(arr):
    """Injective int64 encoding of E8 coordinate rows (|entry| < 32)."""
    a = np.asarray(arr, dtype=np.int64)
    if a.size and int(np.abs(a).max()) >= 32:
        raise ValueError("coordinates out of packing range")
    return (a + 32) @ _PACK_POWS


@lru_cache(maxsize=None)
def _scan_tables(bound):
    """Integer scan tables (vectors, norms, Gram image) at a norm bound."""
    a = _short_vector_array(bound).astype(np.int64)
    nrm = np.einsum("ij,jk,ik->i", a, _CARTAN_NP, a)
    return {"A": a, "NRM": nrm, "AC": a @ _CARTAN_NP}


@lru_cache(maxsize=None)
def _light_tables(bound):
    """Memory-light tables for the agreement sweep."""
    a = _short_vector_array(bound)
    a64 = a.astype(np.int64)
    nrm = np.einsum("ij,jk,ik->i", a64, _CARTAN_NP, a64)
    return {"A": a, "NRM": nrm.astype(np.int32), "PK": pack_rows(a64)}


def reflection_matrices():
    """Integer matrices of the eight simple-root reflections of the E8
    block, acting on E8 coordinates.  Each preserves the Gram matrix."""
    mats = []
    for i in range(8):
        m = np.eye(8, dtype=np.int64)
        m[i, :] -= _CARTAN_NP[i, :]
        mats.append(m)
    return mats


@lru_cache(maxsize=None)
def coset_orbit_labels(m):
    """Label array over (Z/m)^8: index -> smallest index in its orbit
    under the reflection group acting mod m."""
    if m == 1:
        return np.zeros(1, dtype=np.int64)
    if m > MAX_SWEEP_B2:
        raise ValueError("sweep supports b2 <= %d" % MAX_SWEEP_B2)
    pows = (m ** np.arange(8)).astype(np.int64)
    n = m ** 8
    idx = np.arange(n, dtype=np.int64)
    coords = (idx[:, None] // pows[None, :]) % m
    perms = []
    for mat in reflection_matrices():
        mapped = (coords @ mat.T) % m
        perms.append(mapped @ pows)
    labels = idx.copy()
    while True:
        before = labels.copy()
        for p in perms:
            np.minimum(labels, labels[p], out=labels)
        np.minimum(labels, labels[labels], out=labels)
        if np.array_equal(labels, before):
            return labels


def _norm_of(e):
    v = np.asarray(e, dtype=np.int64)
    return int(v @ _CARTAN_NP @ v)


class FiberSweepEngine:
    """Genus-1 surface invariants over large class boxes.

    `scan` selects how each recursion cell gathers candidates:
    "optimized" scans the smaller of the two balls, "oracle" always
    scans the full short-vector table of the cell, mirroring the
    brute-force box enumeration.  The two modes must produce identical
    value tables; running both and comparing is part of the acceptance
    checks.
    """

    # aggregation key layout: (square << 21 | orbit label) per part,
    # parts combined as pk1 << 28 | pk2.  Labels are < 6**8 < 2**21 and
    # part squares are < 2**7, so the combined key fits well inside int64.
    _LSHIFT = 21
    _PSHIFT = 28

    def __init__(self, scan="optimized"):
        if scan not in ("optimized", "oracle"):
            raise ValueError("scan must be 'optimized' or 'oracle'")
        self.scan = scan
        self.values = {}
        self.dec_sums = {}
        self.reps = {}
        self.evals = 0

    @staticmethod
    def key_for(b2, s, e):
        if b2 == 1:
            return (1, s, 0)
        pows = (b2 ** np.arange(8)).astype(np.int64)
        idx = int((np.asarray(e, dtype=np.int64) % b2) @ pows)
        return (b2, s, int(coset_orbit_labels(b2)[idx]))

    def _label_array(self, b2, e_arr):
        if b2 == 1:
            return np.zeros(len(e_arr), dtype=np.int64)
        pows = (b2 ** np.arange(8)).astype(np.int64)
        idx = (np.asarray(e_arr, dtype=np.int64) % b2) @ pows
        return coset_orbit_labels(b2)[idx]

    def class_value(self, b1, b2, e):
        """<1> for the class with coordinates (b1, b2, e1..e8)."""
        b1 = int(b1)
        b2 = int(b2)
        e = tuple(int(x) for x in e)
        ne = _norm_of(e)
        if b2 == 0:
            if b1 > 0 and ne == 0:
                return isotropic_genus1(b1)
            return Fraction(0)
        if b2 < 0:
            return Fraction(0)
        s = 2 * b1 * b2 - ne
        if s < 0:
            return Fraction(0)
        return self._value(b1, b2, e, s)

    def _value(self, b1, b2, e, s):
        key = self.key_for(b2, s, e)
        got = self.values.get(key)
        if got is not None:
            return got
        return self._eval(key, b1, b2, e, s)

    def genus2_core(self, b1, b2, e):
        """4 <1> <beta,beta> + 16 sum <1><1><,> for the class, the
        d-independent factor of its positive-degree genus-2 invariants.
        Zero off the positive-square cone."""
        b1 = int(b1)
        b2 = int(b2)
        e = tuple(int(x) for x in e)
        if b2 <= 0:
            return Fraction(0)
        s = 2 * b1 * b2 - _norm_of(e)
        if s <= 0:
            return Fraction(0)
        value = self._value(b1, b2, e, s)
        return 4 * value * s + 16 * self.dec_sums[self.key_for(b2, s, e)]

    def _eval(self, key, b1, b2, e, s):
        self.evals += 1
        if s == 0:
            value = isotropic_genus1(math.gcd(b1, b2, *(abs(x) for x in e)))
            self.values[key] = value
            self.reps[key] = (b1, b2, e)
            return value
        total = Fraction(0)
        # decompositions with an n*v1 part on either side (pairing n*b2)
        for n in range(1, b1 + 1):
            s2 = s - 2 * n * b2
            if s2 < 0:
                break
            v2 = self._value(b1 - n, b2, e, s2)
            if v2:
                total += 2 * isotropic_genus1(n) * v2 * (n * b2)
        earr = np.asarray(e, dtype=np.int64)
        for b2p in range(1, b2):
            m2 = b2 - b2p
            for b1p in range(0, b1 + 1):
                got = self._scan_cell(earr, b1, b2, b1p, b2p)
                if got is None:
                    continue
                e1, e2, s1, s2 = got
                lab1 = self._label_array(b2p, e1)
                lab2 = self._label_array(m2, e2)
                pk = ((s1 << self._LSHIFT | lab1) << self._PSHIFT) | (
                    s2 << self._LSHIFT | lab2
                )
                _, first, counts = np.unique(pk, return_index=True, return_counts=True)
                for fi, cnt in zip(first, counts):
                    sa = int(s1[fi])
                    sb = int(s2[fi])
                    fac = (s - sa - sb) // 2
                    if fac == 0:
                        continue
                    va = self._value(b1p, b2p, tuple(int(x) for x in e1[fi]), sa)
                    if not va:
                        continue
                    vb = self._value(b1 - b1p, m2, tuple(int(x) for x in e2[fi]), sb)
                    if not vb:
                        continue
                    total += int(cnt) * va * vb * fac
        value = Fraction(8, s) * total
        self.values[key] = value
        self.dec_sums[key] = total
        self.reps[key] = (b1, b2, e)
        return value

    def _scan_cell(self, earr, b1, b2, b1p, b2p):
        """Candidate E8 splittings e = e1 + e2 for one recursion cell,
        restricted to candidates with both part squares nonnegative.
        Returns (e1, e2, s1, s2) arrays or None for an empty cell."""
        r1 = 2 * b1p * b2p
        r2 = 2 * (b1 - b1p) * (b2 - b2p)
        ne = int(earr @ _CARTAN_NP @ earr)
        if self.scan == "oracle" or r1 <= r2:
            tab = _scan_tables(r1)
            dist2 = ne + tab["NRM"] - 2 * (tab["AC"] @ earr)
            mask = dist2 <= r2
            if not mask.any():
                return None
            e1 = tab["A"][mask]
            e2 = earr[None, :] - e1
            s1 = r1 - tab["NRM"][mask]
            s2 = r2 - dist2[mask]
        else:
            tab = _scan_tables(r2)
            ndist = ne + tab["NRM"] - 2 * (tab["AC"] @ earr)
            mask = ndist <= r1
            if not mask.any():
                return None
            e2 = tab["A"][mask]
            e1 = earr[None, :] - e2
            s1 = r1 - ndist[mask]
            s2 = r2 - tab["NRM"][mask]
        return e1, e2, s1, s2


def box_e8_parts(norm_bound):
    tab = _light_tables(norm_bound)
    return tab["A"].astype(np.int64), tab["NRM"].astype(np.int64)


def genus1_box_table(max_b1=4, max_b2=4, norm_bound=4, scan="optimized", engine=None):
    """<1> for every positive class in the coordinate box.

    Returns (table, engine) where table maps 10-tuples of coordinates to
    exact values.  Classes covered: n*v1 for 1 <= n <= max_b1, and all
    (b1, b2, e) with 0 <= b1 <= max_b1, 1 <= b2 <= max_b2, e a short
    vector of norm <= norm_bound.
    """
    if engine is None:
        engine = FiberSweepEngine(scan)
    parts, _ = box_e8_parts(norm_bound)
    table = {}
    zero = (0,) * 8
    for n in range(1, max_b1 + 1):
        table[(n, 0) + zero] = engine.class_value(n, 0, zero)
    rows = [tuple(int(x) for x in row) for row in parts]
    for b2 in range(1, max_b2 + 1):
        for b1 in range(0, max_b1 + 1):
            for e in rows:
                table[(b1, b2) + e] = engine.class_value(b1, b2, e)
    return table, engine


# -- brute-force vs optimized decomposition agreement -------------------


def _chunk_rows(n_targets):
    # the sweep is bandwidth-bound; chunks around 32 MB amortize the
    # per-chunk bookkeeping without blowing up the working set
    return max(1, (1 << 23) // max(n_targets, 1))


def _augmented_scan(a32, ct, tn05):
    # one extra GEMM column folds the -tn05 shift into the product, so
    # the dot matrix comes out already centered and needs no second pass
    ones = np.ones((len(a32), 1), dtype=np.float32)
    a_aug = np.ascontiguousarray(np.hstack([a32, ones]))
    ct_aug = np.ascontiguousarray(np.vstack([ct, -tn05[None, :]]))
    return a_aug, ct_aug


def _ball_scan_records(scan_bound, radius, targets, t_norms, shifted):
    """Per-target survivors of one ball scan, as sorted int64 records
    (target_index << 48) | packed candidate coordinates.

    Scans all f with <f,f> <= scan_bound and keeps those at squared
    distance <= radius from the target (candidate recorded is f itself,
    or target - f when `shifted`).  The comparison is rearranged into
    dots >= threshold so a single float32 matrix product per chunk plus
    two in-place passes decide the mask; every dot product is an integer
    far below 2**23, so the float32 arithmetic is exact.
    """
    tab = _light_tables(scan_bound)
    n_t = len(targets)
    ct = np.ascontiguousarray((_CARTAN_NP @ targets.T).astype(np.float32))
    tn05 = 0.5 * t_norms.astype(np.float32)
    a32, ct = _augmented_scan(tab["A"].astype(np.float32), ct, tn05)
    thr = 0.5 * (tab["NRM"].astype(np.float32) - radius)
    step = _chunk_rows(n_t)
    dots = np.empty((min(step, len(a32)), n_t), dtype=np.float32)
    mask = np.empty_like(dots, dtype=bool)
    recs = []
    total = 0
    for lo in range(0, len(a32), step):
        hi = min(lo + step, len(a32))
        k = hi - lo
        d = dots[:k]
        m = mask[:k]
        np.matmul(a32[lo:hi], ct, out=d)
        np.greater_equal(d, thr[lo:hi, None], out=m)
        rows, cols = np.nonzero(m)
        if not len(rows):
            continue
        total += len(rows)
        if shifted:
            cand = targets[cols] - tab["A"][lo + rows].astype(np.int64)
            pk = pack_rows(cand)
        else:
            pk = tab["PK"][lo + rows]
        recs.append((cols.astype(np.int64) << 48) | pk)
    if recs:
        out = np.concatenate(recs)
        out.sort()
        return out, total
    return np.zeros(0, dtype=np.int64), 0


def _oracle_records(r1, r2, targets, t_norms):
    """Brute-force survivors: scan every f with <f,f> <= r1 and keep
    those with ||e - f||^2 <= r2."""
    return _ball_scan_records(r1, r2, targets, t_norms, shifted=False)


def _grouped_oracle_records(shapes, targets, t_norms):
    """Brute-force survivors for many (r1, r2) cell shapes in one pass.

    Short-vector arrays are norm-major, so the scan set of every shape
    is a prefix of the scan set for the largest r1; the dot products
    against the targets are then computed once per chunk and each shape
    reads its prefix slice.  Shapes with r2 = 0 ask for candidates at
    squared distance zero from the target, which by positive
    definiteness means coordinate equality, so they are answered by a
    direct match of each target against the scan prefix instead of a
    dot-product pass.  Returns {shape: (sorted records, count)}.
    """
    shapes = sorted(shapes, key=lambda s: (-s[0], -s[1]))
    eq_shapes = [sh for sh in shapes if sh[1] == 0]
    out = {}
    for r1, _ in eq_shapes:
        keep = np.nonzero(t_norms <= r1)[0]
        recs = (keep.astype(np.int64) << 48) | pack_rows(targets[keep])
        out[(r1, 0)] = (recs, len(recs))
    shapes = [sh for sh in shapes if sh[1] > 0]
    if not shapes:
        return out
    rmax = max(r1 for r1, _ in shapes)
    tab = _light_tables(rmax)
    nrm = tab["NRM"]
    cuts = {sh: int(np.searchsorted(nrm, sh[0], side="right")) for sh in shapes}
    n_t = len(targets)
    ct = np.ascontiguousarray((_CARTAN_NP @ targets.T).astype(np.float32))
    tn05 = 0.5 * t_norms.astype(np.float32)
    a32, ct = _augmented_scan(tab["A"].astype(np.float32), ct, tn05)
    nrm32 = nrm.astype(np.float32)
    step = _chunk_rows(n_t)
    dots = np.empty((min(step, len(a32)), n_t), dtype=np.float32)
    mask = np.empty_like(dots, dtype=bool)
    acc = {sh: [] for sh in shapes}
    for lo in range(0, len(a32), step):
        hi = min(lo + step, len(a32))
        k = hi - lo
        d = dots[:k]
        np.matmul(a32[lo:hi], ct, out=d)
        for sh in shapes:
            cut = cuts[sh]
            if cut <= lo:
                continue
            k2 = min(cut, hi) - lo
            m = mask[:k2]
            np.greater_equal(d[:k2], 0.5 * (nrm32[lo:lo + k2, None] - sh[1]), out=m)
            rows, cols = np.nonzero(m)
            if len(rows):
                acc[sh].append((cols.astype(np.int64) << 48) | tab["PK"][lo + rows])
    for sh, recs in acc.items():
        if recs:
            r = np.concatenate(recs)
            r.sort()
            out[sh] = (r, len(r))
        else:
            out[sh] = (np.zeros(0, dtype=np.int64), 0)
    return out


def _optimized_records(r1, r2, targets, t_norms):
    """Smaller-ball survivors: scan the complement ball and shift by the
    target when it is smaller than the direct one."""
    if r1 <= r2:
        out, _ = _ball_scan_records(r1, r2, targets, t_norms, shifted=False)
    else:
        out, _ = _ball_scan_records(r2, r1, targets, t_norms, shifted=True)
    return out


def decomposition_agreement(max_b1=4, max_b2=4, norm_bound=4):
    """Compare brute-force and optimized decomposition enumeration for
    every positive class in the box, recursion cell by recursion cell.

    Cells with both parts of positive v1-degree pairing reduce to ball
    scans depending only on (r1, r2) and the class E8 part, so they are
    deduplicated across (b1, b2, b1', b2').  Cells with an n*v1 part on
    either side admit at most one candidate (a radius-zero ball), and
    both enumerations keep it exactly when the complement square is
    nonnegative; these are counted analytically.  Returns a report dict.
    """
    targets, t_norms = box_e8_parts(norm_bound)
    n_t = len(targets)
    cell_shapes = {}
    for b1 in range(0, max_b1 + 1):
        for b2 in range(1, max_b2 + 1):
            for b1p in range(0, b1 + 1):
                for b2p in range(1, b2):
                    r1 = 2 * b1p * b2p
                    r2 = 2 * (b1 - b1p) * (b2 - b2p)
                    cell_shapes.setdefault((r1, r2), []).append((b1, b2, b1p, b2p))
    mismatches = []
    total_pairs = 0
    per_shape = {}
    grouped = _grouped_oracle_records(list(cell_shapes), targets, t_norms) if cell_shapes else {}
    for (r1, r2), cells in sorted(cell_shapes.items()):
        oracle, n_surv = grouped[(r1, r2)]
        optimized = _optimized_records(r1, r2, targets, t_norms)
        agree = np.array_equal(oracle, optimized)
        if not agree:
            mismatches.append({"shape": (r1, r2), "cells": cells})
        total_pairs += n_surv * len(cells)
        per_shape[(r1, r2)] = {
            "cells": len(cells),
            "survivors": n_surv,
            "agree": bool(agree),
        }
        del oracle, optimized
        grouped[(r1, r2)] = None
    # edge cells: part n*v1 on either side, complement (b1-n, b2, e);
    # the pair survives exactly when the complement square s - 2*n*b2
    # is nonnegative (ordered pairs: factor 2)
    edge_pairs = 0
    for b1 in range(0, max_b1 + 1):
        for b2 in range(1, max_b2 + 1):
            s_arr = 2 * b1 * b2 - t_norms
            for n in range(1, b1 + 1):
                edge_pairs += 2 * int((s_arr - 2 * n * b2 >= 0).sum())
    total_pairs += edge_pairs
    for n in range(2, max_b1 + 1):
        total_pairs += n - 1
    n_classes = max_b1 + (max_b1 + 1) * max_b2 * n_t
    return {
        "box": {"max_b1": max_b1, "max_b2": max_b2, "norm_bound": norm_bound},
        "classes": n_classes,
        "cell_shapes": len(cell_shapes),
        "all_agree": not mismatches,
        "mismatches": mismatches,
        "ordered_pairs_including_multiplicity": total_pairs,
        "per_shape": {str(k): v for k, v in per_shape.items()},
    }

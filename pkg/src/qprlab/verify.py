"""Verification suites for the extremal theorems, the vector lemmas and the Born rule.

Each suite returns a list of :class:`Check`; the CLI prints them and exits
nonzero if any failed.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import oracles
from .config import TOL
from .frames import born_check, haar_rotations, random_nqpr, sic_frame, sic_projectors, wootters_frame
from .hw import displacement, weyl_pair
from .linalg import hs_distance
from .negativity import (
    closed_forms,
    count_max_negativity_states,
    frame_channel_negativity,
    frame_negativity,
    frame_unitary_negativity,
    spectrum_class,
    unitary_negativity,
    channel_negativity,
)
from .channels import saturating_channel
from .sampling import random_povm, random_state
from .sic import builtin_fiducial, d3_family, find_fiducial, load_fiducial, sic_from_fiducial, validate_sic
from .symmetry import classify, hw_covariant, is_symmetry, saturating_unitary, unitary_transfer

SUITES = ("thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "lemmas", "born", "all")


@dataclass
class Check:
    name: str
    passed: bool
    value: float = float("nan")
    bound: float = float("nan")
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": bool(self.passed), "value": self.value,
                "bound": self.bound, "detail": self.detail}


@dataclass
class Options:
    dim: int = 3
    samples: int = 1000
    seed: int = 0
    threads: int = 1
    data_dir: str = None
    tol: float = TOL.closed_form


def sic_set(d, data_dir=None):
    """Built-in SIC for d = 2, 3; otherwise a fiducial from the data directory, or None."""
    if d in (2, 3):
        return sic_from_fiducial(builtin_fiducial(d))
    path = find_fiducial(d, data_dir)
    if path is None:
        return None
    return sic_from_fiducial(load_fiducial(path))


def frames_for(d, data_dir=None, seed=0):
    frames = [wootters_frame(d)]
    s = sic_set(d, data_dir)
    if s is not None:
        frames += [sic_frame(s, "minus"), sic_frame(s, "plus")]
    frames.append(random_nqpr(d, seed, (11,)))
    return frames


def thm1(o):
    d, tol = o.dim, o.tol
    cf = closed_forms(d)
    out = []
    for f in frames_for(d, o.data_dir, o.seed):
        copies = [f] + haar_rotations(f, min(o.samples, 100), o.seed)
        vals = [frame_negativity(g).value for g in copies]
        lo, hi = min(vals), max(vals)
        out.append(Check(f"thm1 bounds {f.kind}", cf["N_minus"] - tol <= lo and hi <= cf["N_plus"] + tol,
                         hi, cf["N_plus"], f"N in [{lo:.12g}, {hi:.12g}] over {len(copies)} copies"))
        if f.kind == "sic-minus":
            ok_eq = abs(vals[0] - cf["N_minus"]) <= tol
            classes = {spectrum_class(q) for q in f.elements}
            rep = validate_sic(sic_projectors(f), TOL.exact if d <= 3 else TOL.ingested)
            out.append(Check("thm1 sic-minus attains N-", ok_eq and classes == {"lower-extremal"} and rep.passed,
                             vals[0], cf["N_minus"], f"classes={sorted(classes)} sic_ok={rep.passed}"))
    up, low = oracles.theorem1_spectrum_check(d, max(o.samples, 1000), o.seed)
    out.append(Check("thm1 spectrum oracle upper", up.passed, up.best_found, up.bound, f"gap={up.gap:.3e}"))
    out.append(Check("thm1 spectrum oracle lower", low.passed, low.best_found, low.bound, f"gap={low.gap:.3e}"))
    return out


def thm2(o):
    d = o.dim
    out = []
    s = sic_set(d, o.data_dir)
    if s is not None:
        plus = count_max_negativity_states(sic_frame(s, "plus"))
        minus = count_max_negativity_states(sic_frame(s, "minus"))
        out.append(Check("thm2 sic-plus count = d^2", plus.count == d * d, plus.count, d * d))
        if d > 2:
            out.append(Check("thm2 sic-minus count = 0", minus.count == 0, minus.count, 0))
    w = count_max_negativity_states(wootters_frame(d))
    out.append(Check("thm2 wootters count <= d^2", w.count <= d * d, w.count, d * d))
    for i in range(min(o.samples, 20)):
        c = count_max_negativity_states(random_nqpr(d, o.seed, (12, i))).count
        if c > d * d:
            out.append(Check("thm2 random frame count <= d^2", False, c, d * d))
            break
    else:
        out.append(Check("thm2 random frames count <= d^2", True))
    return out


def thm3(o):
    d, tol = o.dim, o.tol
    cf = closed_forms(d)
    out = []
    for f in frames_for(d, o.data_dir, o.seed):
        val, (j, k) = frame_unitary_negativity(f)
        ok = cf["NU_lower"] - tol <= val <= cf["NU_upper"] + tol
        if f.kind.startswith("sic"):
            ok = ok and abs(val - 1.0) <= tol
        out.append(Check(f"thm3 bounds {f.kind}", ok, val, cf["NU_upper"]))
        mc = -d * oracles.random_unitary_min_entries(f, o.samples, o.seed, o.threads).min()
        out.append(Check(f"thm3 random unitaries <= N_U {f.kind}", mc <= val + tol, mc, val))
        sat = unitary_negativity(saturating_unitary(f, j, k), f)
        out.append(Check(f"thm3 saturating unitary {f.kind}", abs(sat - val) <= tol, sat, val))
    return out


def thm4(o):
    d, tol = o.dim, o.tol
    cf = closed_forms(d)
    out = []
    for f in frames_for(d, o.data_dir, o.seed):
        val, (j, k) = frame_channel_negativity(f)
        ok = val >= cf["NC_lower"] - tol
        if f.kind == "sic-minus":
            ok = ok and abs(val - cf["NC_lower"]) <= tol
        out.append(Check(f"thm4 lower bound {f.kind}", ok, val, cf["NC_lower"]))
        mc = -d * oracles.random_channel_min_entries(f, max(o.samples // 10, 1), o.seed, o.threads).min()
        out.append(Check(f"thm4 random channels <= N_C {f.kind}", mc <= val + tol, mc, val))
        sat = channel_negativity(saturating_channel(f, j, k), f)
        out.append(Check(f"thm4 saturating channel {f.kind}", abs(sat - val) <= tol, sat, val))
    return out


def thm5(o):
    d = o.dim
    out = []
    frames = [f for f in frames_for(d, o.data_dir, o.seed) if f.kind.startswith("sic")]
    if not frames:
        frames = [wootters_frame(d)] if d % 2 else []
    pair = weyl_pair(d)
    for f in frames:
        bad = 0
        for a in range(d):
            for b in range(d):
                D = displacement(a, b, pair)
                v = classify(unitary_transfer(D, f))
                sigma = is_symmetry(D, f)
                if not v.is_permutation or sigma is None or tuple(sigma) != v.sigma:
                    bad += 1
        out.append(Check(f"thm5 HW displacements are permutations {f.kind}", bad == 0, bad, 0))
        mins = oracles.random_unitary_min_entries(f, o.samples, o.seed, o.threads)
        worst = float(mins.max())
        out.append(Check(f"thm5 random unitaries have negative entries {f.kind}", worst < -1e-6, worst, -1e-6))
    return out


def scan_d3(steps, t_max=math.pi / 9):
    """Rows (t, N, N_U, N_C, sic_ok, hw_covariant, label) over an even grid of [0, t_max]."""
    rows = []
    for t in np.linspace(0.0, t_max, steps):
        rec = d3_family(float(t))
        s = sic_from_fiducial(rec)
        f = sic_frame(s, "minus")
        rows.append((
            float(t),
            frame_negativity(f).value,
            frame_unitary_negativity(f).value,
            frame_channel_negativity(f).value,
            validate_sic(s, TOL.exact).passed,
            hw_covariant(f),
            "hesse" if t == 0.0 else "family",
        ))
    return rows


def wootters_d3_fiducial_overlap():
    """``|<psi(0)|phi>|`` where phi spans the projector recovered from the first d=3 phase-point operator."""
    w = wootters_frame(3)
    Pi = sic_projectors(w)[0]
    vals, vecs = np.linalg.eigh(Pi)
    phi = vecs[:, -1]
    psi0 = np.array([0.0, 1.0, -1.0]) / math.sqrt(2.0)
    return abs(np.vdot(psi0, phi)), Pi


def thm6(o):
    tol = o.tol
    out = []
    rows = scan_d3(max(min(o.samples, 50), 2))
    const = all(abs(r[1] - 1 / 3) <= tol and abs(r[2] - 1) <= tol and abs(r[3] - 5 / 3) <= tol for r in rows)
    out.append(Check("thm6 family negativities constant", const, len(rows), 0))
    out.append(Check("thm6 family SIC and HW covariant", all(r[4] and r[5] for r in rows)))
    ov, _ = wootters_d3_fiducial_overlap()
    out.append(Check("thm6 Wootters d=3 fiducial is Hesse", abs(ov - 1) <= 1e-10, ov, 1.0))
    s = sic_from_fiducial(d3_family(0.0))
    wit = count_max_negativity_states(wootters_frame(3))
    dist = max(min(hs_distance(w, p.matrix) for p in s.projectors) for w in wit.states)
    out.append(Check("thm6 Hesse projectors are maximal-negativity states", wit.count == 9 and dist < 1e-8, dist, 1e-8))
    return out


def lemmas(o):
    out = []
    n = max(o.samples, 1000)
    for fn in (oracles.lemma_l1_check, oracles.lemma_channel_lower_check, oracles.lemma_negc2_check):
        r = fn(o.dim, n, o.seed)
        out.append(Check(f"lemma {r.lemma} d={o.dim}", r.passed and r.gap < 1e-4, r.best_found, r.bound,
                         f"gap={r.gap:.3e} extremal_attained={r.extremal_attained}"))
    if o.dim >= 3:
        d = o.dim
        f1 = oracles.f_two_level(1, d - 1, d)
        out.append(Check("lemma f(1,d-1) equals bound", abs(f1 - oracles.channel_lower_bound(d)) <= 1e-12, f1,
                         oracles.channel_lower_bound(d)))
    return out


def born(o):
    d = o.dim
    worst = 0.0
    for f in frames_for(d, o.data_dir, o.seed):
        for i in range(min(o.samples, 100)):
            rho = random_state(d, o.seed, (13, i))
            povm = random_povm(d, 2 + i % 3, o.seed, (14, i))
            worst = max(worst, born_check(rho, povm, f))
    return [Check("born rule reconstruction", worst < 1e-9, worst, 1e-9)]


def run(which, o):
    table = {"thm1": thm1, "thm2": thm2, "thm3": thm3, "thm4": thm4, "thm5": thm5, "thm6": thm6,
             "lemmas": lemmas, "born": born}
    names = list(table) if which == "all" else [which]
    out = []
    for name in names:
        out += table[name](o)
    return out

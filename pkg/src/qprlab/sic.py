"""SIC construction from Weyl-Heisenberg fiducials, validation and fiducial files."""
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .config import TOL, FiducialParseError, NotASicError, ValidationError
from .hw import displacement, weyl_pair
from .linalg import HermitianOperator, projector


@dataclass(frozen=True, eq=False)
class FiducialRecord:
    dim: int
    amplitudes: np.ndarray
    source: str = ""
    tolerance: float = TOL.exact

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != self.dim:
            raise FiducialParseError(
                f"fiducial declares dim {self.dim} but has {amps.shape[0]} amplitudes"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > self.tolerance:
            raise ValidationError(
                f"fiducial is not unit norm (|psi| = {norm:.12g}, tolerance {self.tolerance:g})"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True, eq=False)
class SicSet:
    dim: int
    projectors: tuple
    indices: tuple
    fiducial: FiducialRecord = None
    label: str = ""

    def __len__(self):
        return len(self.projectors)

    def matrices(self):
        return np.array([p.matrix for p in self.projectors])


@dataclass
class SicReport:
    dim: int
    tol: float
    rank1_dev: float
    fidelity_dev: float
    resolution_dev: float
    worst_pair: tuple = field(default=(0, 0))

    @property
    def passed(self):
        return max(self.rank1_dev, self.fidelity_dev, self.resolution_dev) <= self.tol

    def to_dict(self):
        return {
            "dim": self.dim,
            "tol": self.tol,
            "rank1_dev": self.rank1_dev,
            "fidelity_dev": self.fidelity_dev,
            "resolution_dev": self.resolution_dev,
            "worst_pair": list(self.worst_pair),
            "passed": self.passed,
        }


def validate_sic(s, tol=TOL.exact):
    """Worst-case deviations from the rank-1, equal-fidelity and resolution conditions.

    Accepts a :class:`SicSet` or any sequence of d x d matrices.
    """
    mats = s.matrices() if isinstance(s, SicSet) else np.array([np.asarray(p) for p in s])
    n, d, _ = mats.shape
    rank1 = np.zeros(d)
    rank1[0] = 1.0
    rank1_dev = 0.0
    for P in mats:
        ev = np.linalg.eigvalsh(P)[::-1]
        rank1_dev = max(rank1_dev, float(np.max(np.abs(ev - rank1))))
    gram = np.real(np.einsum("jab,kba->jk", mats, mats))
    target = (d * np.eye(n) + 1.0) / (d + 1.0)
    diff = np.abs(gram - target)
    worst = np.unravel_index(int(np.argmax(diff)), diff.shape)
    fid_dev = float(diff.max()) if n == d * d else math.inf
    resolution_dev = float(np.max(np.abs(mats.sum(axis=0) - d * np.eye(d))))
    return SicReport(d, tol, rank1_dev, fid_dev, resolution_dev, (int(worst[0]), int(worst[1])))


def sic_from_fiducial(psi, tol=None, label=None):
    """Weyl-Heisenberg orbit of a fiducial, ordered by (j, k) lexicographically.

    Raises :class:`NotASicError` if the orbit is not a SIC within tolerance.
    """
    if not isinstance(psi, FiducialRecord):
        amps = np.asarray(psi, dtype=np.complex128).reshape(-1)
        psi = FiducialRecord(amps.shape[0], amps, source="array")
    d = psi.dim
    tol = psi.tolerance if tol is None else tol
    pair = weyl_pair(d)
    vec = psi.amplitudes
    projs, idx = [], []
    for j in range(d):
        for k in range(d):
            v = displacement(j, k, pair) @ vec
            projs.append(HermitianOperator(projector(v)))
            idx.append((j, k))
    s = SicSet(d, tuple(projs), tuple(idx), psi, label or psi.source)
    report = validate_sic(s, tol)
    if not report.passed:
        raise NotASicError(
            f"not a SIC fiducial: fidelity dev {report.fidelity_dev:.3e}, "
            f"rank-1 dev {report.rank1_dev:.3e}, resolution dev {report.resolution_dev:.3e} "
            f"(tol {tol:g})"
        )
    return s


def d3_family(t):
    """Fiducial ``(0, 1, -e^{it}) / sqrt(2)`` of the one-parameter d=3 family."""
    t = float(t)
    amps = np.array([0.0, 1.0, -np.exp(1j * t)]) / math.sqrt(2.0)
    label = "hesse" if t == 0.0 else f"d3-family(t={t!r})"
    return FiducialRecord(3, amps, source=label, tolerance=TOL.exact)


def d2_fiducial():
    """Qubit fiducial with Bloch vector (1, 1, 1)/sqrt(3) (tetrahedral SIC)."""
    theta = math.acos(1.0 / math.sqrt(3.0))
    amps = np.array([math.cos(theta / 2), np.exp(1j * math.pi / 4) * math.sin(theta / 2)])
    return FiducialRecord(2, amps, source="tetrahedron", tolerance=TOL.exact)


def builtin_fiducial(d, t=0.0):
    if d == 2:
        return d2_fiducial()
    if d == 3:
        return d3_family(t)
    raise ValueError(f"no built-in fiducial for d={d}; ingest one with load_fiducial")


# -- fiducial files -------------------------------------------------------


def _parse_text(text, source):
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    try:
        key, dim = lines[0].split()
        key2, tol = lines[1].split()
        if key != "dim" or key2 != "tol":
            raise FiducialParseError(f"{source}: expected 'dim' and 'tol' header lines")
        dim = int(dim)
        tol = float(tol)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FiducialParseError):
            raise
        raise FiducialParseError(f"{source}: malformed header ({exc})") from None
    body = lines[2:]
    if len(body) != dim:
        raise FiducialParseError(f"{source}: expected {dim} amplitude lines, found {len(body)}")
    amps = []
    for n, line in enumerate(body):
        parts = line.split()
        if len(parts) != 2:
            raise FiducialParseError(f"{source}: amplitude line {n + 1} needs '<re> <im>'")
        try:
            amps.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise FiducialParseError(f"{source}: bad number on amplitude line {n + 1}") from None
    return dim, tol, amps


def _parse_json(text, source):
    try:
        obj = json.loads(text)
        dim = int(obj["dim"])
        tol = float(obj["tol"])
        amps = [complex(float(re), float(im)) for re, im in obj["amplitudes"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise FiducialParseError(f"{source}: malformed JSON fiducial ({exc})") from None
    if len(amps) != dim:
        raise FiducialParseError(f"{source}: expected {dim} amplitudes, found {len(amps)}")
    return dim, tol, amps


def parse_fiducial(text, source="<string>"):
    if text.lstrip().startswith("{"):
        dim, tol, amps = _parse_json(text, source)
    else:
        dim, tol, amps = _parse_text(text, source)
    return FiducialRecord(dim, np.array(amps), source=source, tolerance=tol)


def load_fiducial(path_or_stream):
    """Read a fiducial in the text (``dim``/``tol``/amplitude lines) or JSON format."""
    if hasattr(path_or_stream, "read"):
        text = path_or_stream.read()
        source = getattr(path_or_stream, "name", "<stream>")
    else:
        with open(path_or_stream, encoding="utf-8") as fh:
            text = fh.read()
        source = os.path.basename(str(path_or_stream))
    return parse_fiducial(text, source)


def format_fiducial(rec, fmt="text"):
    if fmt == "json":
        return json.dumps(
            {
                "dim": rec.dim,
                "tol": rec.tolerance,
                "amplitudes": [[float(a.real), float(a.imag)] for a in rec.amplitudes],
            }
        )
    lines = [f"# {rec.source}" if rec.source else "# fiducial", f"dim {rec.dim}", f"tol {rec.tolerance!r}"]
    lines += [f"{float(a.real)!r} {float(a.imag)!r}" for a in rec.amplitudes]
    return "\n".join(lines) + "\n"


def save_fiducial(rec, path, fmt=None):
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "text"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_fiducial(rec, fmt))


def find_fiducial(d, data_dir):
    """Look up ``d<d>.txt`` / ``d<d>.json`` / ``sic_d<d>.*`` in a data directory."""
    if not data_dir:
        return None
    for name in (f"d{d}.txt", f"d{d}.json", f"sic_d{d}.txt", f"sic_d{d}.json"):
        path = os.path.join(data_dir, name)
        if os.path.exists(path):
            return path
    return None

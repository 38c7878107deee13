"""File formats for sinograms, images, moment tables, and diagnostics.

Binary layouts are little-endian and fixed:

* sinogram: magic ``MTSINO1\\0``, u32 n_views, u32 n_rays,
  f64 angles_deg[n_views], u8 known_mask[n_views], f64 data row-major
  (view-major); round-trips bit-exactly.
* raw image: magic ``MTIMG1\\0``, u32 n, f64 data row-major; lossless.
* PGM: 16-bit P5 with linear min-max scaling, the scale recorded in a
  ``<file>.scale.txt`` sidecar so the float image can be re-read (up to
  quantization).

Text formats (CSV at 17 significant digits, deterministic row order):
moment tables, recovery diagnostics, the phantom spec, and the
completion sidecar.
"""

import math
import struct
from pathlib import Path

import numpy as np

from .completion import CompletionConfig
from .moments import MomentSet, check_basis
from .phantom import Ellipse, PhantomSpec
from .radon import Sinogram, SinogramGeometry
from .recovery import RecoveryReport

SINO_MAGIC = b"MTSINO1\x00"
IMG_MAGIC = b"MTIMG1\x00"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# sinogram binary format


def save_sinogram(path, sino: Sinogram) -> None:
    geom = sino.geometry
    with open(path, "wb") as fh:
        fh.write(SINO_MAGIC)
        fh.write(struct.pack("<II", geom.n_views, geom.n_rays))
        fh.write(np.asarray(geom.angles_deg, "<f8").tobytes())
        fh.write(np.asarray(sino.known_mask, np.uint8).tobytes())
        fh.write(np.ascontiguousarray(sino.data, "<f8").tobytes())


def load_sinogram(path) -> Sinogram:
    with open(path, "rb") as fh:
        magic = fh.read(len(SINO_MAGIC))
        if magic != SINO_MAGIC:
            raise ValueError(f"{path}: not a sinogram file (bad magic {magic!r})")
        n_views, n_rays = struct.unpack("<II", fh.read(8))
        angles = np.frombuffer(fh.read(8 * n_views), "<f8")
        mask = np.frombuffer(fh.read(n_views), np.uint8).astype(bool)
        data = np.frombuffer(fh.read(8 * n_views * n_rays), "<f8")
        data = data.reshape(n_views, n_rays)
    geom = SinogramGeometry(n_views=n_views, angles_deg=angles, n_rays=n_rays)
    return Sinogram(geom, data.copy(), mask)


# ---------------------------------------------------------------------------
# raw float64 image format


def save_image(path, image: np.ndarray) -> None:
    image = np.asarray(image, dtype=float)
    if image.ndim != 2 or image.shape[0] != image.shape[1]:
        raise ValueError(f"image must be square, got shape {image.shape}")
    with open(path, "wb") as fh:
        fh.write(IMG_MAGIC)
        fh.write(struct.pack("<I", image.shape[0]))
        fh.write(np.ascontiguousarray(image, "<f8").tobytes())


def load_image(path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic = fh.read(len(IMG_MAGIC))
        if magic != IMG_MAGIC:
            raise ValueError(f"{path}: not a raw image file (bad magic {magic!r})")
        (n,) = struct.unpack("<I", fh.read(4))
        data = np.frombuffer(fh.read(8 * n * n), "<f8")
    return data.reshape(n, n).copy()


# ---------------------------------------------------------------------------
# 16-bit PGM with scaling sidecar


def _pgm_sidecar(path) -> Path:
    return Path(str(path) + ".scale.txt")


def save_pgm(path, image: np.ndarray) -> None:
    """Write a 16-bit P5 PGM plus a sidecar with the min-max scaling.

    The array convention is image[i, j] = f(x_i, y_j); the raster is
    written with x along columns and y decreasing down rows, the usual
    display orientation.
    """
    image = np.asarray(image, dtype=float)
    if image.ndim != 2 or image.shape[0] != image.shape[1]:
        raise ValueError(f"image must be square, got shape {image.shape}")
    vmin = float(image.min())
    vmax = float(image.max())
    span = vmax - vmin
    if span > 0:
        scaled = np.round((image - vmin) / span * 65535.0)
    else:
        scaled = np.zeros_like(image)
    raster = np.flip(scaled.T, axis=0).astype(">u2")
    with open(path, "wb") as fh:
        fh.write(f"P5\n{image.shape[1]} {image.shape[0]}\n65535\n".encode())
        fh.write(raster.tobytes())
    _pgm_sidecar(path).write_text(f"vmin {_fmt(vmin)}\nvmax {_fmt(vmax)}\n")


def load_pgm(path) -> np.ndarray:
    """Re-read a PGM written by :func:`save_pgm` (lossy: 16-bit quantized)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    header, _, rest = blob.partition(b"65535\n")
    fields = header.split()
    if fields[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    width, height = int(fields[1]), int(fields[2])
    raster = np.frombuffer(rest, ">u2", count=width * height).reshape(height, width)
    scale = {}
    for line in _pgm_sidecar(path).read_text().splitlines():
        key, value = line.split()
        scale[key] = float(value)
    image = np.flip(raster, axis=0).T.astype(float)
    return image / 65535.0 * (scale["vmax"] - scale["vmin"]) + scale["vmin"]


# ---------------------------------------------------------------------------
# moment table CSV


def save_moments(path, ms: MomentSet) -> None:
    lines = ["basis,M", f"{ms.basis},{ms.order}", "n,m,value"]
    for n in range(ms.order + 1):
        for m in range(ms.order + 1 - n):
            lines.append(f"{n},{m},{_fmt(ms.values[n, m])}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_moments(path) -> MomentSet:
    lines = Path(path).read_text().splitlines()
    if lines[0] != "basis,M" or lines[2] != "n,m,value":
        raise ValueError(f"{path}: not a moment table")
    basis, order_text = lines[1].split(",")
    order = int(order_text)
    check_basis(basis)
    values = np.zeros((order + 1, order + 1))
    for line in lines[3:]:
        if not line:
            continue
        n_text, m_text, value = line.split(",")
        values[int(n_text), int(m_text)] = float(value)
    return MomentSet(order, basis, values)


# ---------------------------------------------------------------------------
# recovery diagnostics CSV


def save_diagnostics(path, report: RecoveryReport) -> None:
    lines = ["order,condition,residual"]
    for k in range(report.moments.order + 1):
        lines.append(
            f"{k},{_fmt(report.condition_numbers[k])},{_fmt(report.residual_norms[k])}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def load_diagnostics(path) -> tuple[np.ndarray, np.ndarray]:
    lines = Path(path).read_text().splitlines()
    if lines[0] != "order,condition,residual":
        raise ValueError(f"{path}: not a diagnostics table")
    conditions, residuals = [], []
    for line in lines[1:]:
        if not line:
            continue
        _, cond, resid = line.split(",")
        conditions.append(float(cond))
        residuals.append(float(resid))
    return np.asarray(conditions), np.asarray(residuals)


# ---------------------------------------------------------------------------
# phantom spec text format


def save_phantom_spec(path, spec: PhantomSpec) -> None:
    lines = ["# cx cy a b tilt_deg density"]
    for e in spec.ellipses:
        lines.append(
            " ".join(
                _fmt(v)
                for v in (e.cx, e.cy, e.a, e.b, math.degrees(e.tilt), e.density)
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def load_phantom_spec(path) -> PhantomSpec:
    ellipses = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 6:
            raise ValueError(
                f"{path}: expected 'cx cy a b tilt_deg density', got {line!r}"
            )
        cx, cy, a, b, tilt_deg, density = map(float, parts)
        ellipses.append(Ellipse(cx, cy, a, b, math.radians(tilt_deg), density))
    return PhantomSpec(ellipses=tuple(ellipses))


# ---------------------------------------------------------------------------
# completion sidecar


def save_completion_sidecar(
    path, config: CompletionConfig, original_mask: np.ndarray, report: RecoveryReport
) -> None:
    mask_text = "".join("1" if k else "0" for k in original_mask)
    lines = [
        f"M {config.order}",
        f"basis {config.basis}",
        f"blend {config.blend}",
        f"known_mask {mask_text}",
        "order,condition,residual",
    ]
    for k in range(report.moments.order + 1):
        lines.append(
            f"{k},{_fmt(report.condition_numbers[k])},{_fmt(report.residual_norms[k])}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def load_completion_sidecar(path) -> dict:
    lines = Path(path).read_text().splitlines()
    out = {}
    for idx, line in enumerate(lines):
        if line == "order,condition,residual":
            table = lines[idx + 1 :]
            out["condition_numbers"] = np.array(
                [float(row.split(",")[1]) for row in table if row]
            )
            out["residual_norms"] = np.array(
                [float(row.split(",")[2]) for row in table if row]
            )
            break
        key, _, value = line.partition(" ")
        out[key] = value
    out["M"] = int(out["M"])
    out["known_mask"] = np.array([ch == "1" for ch in out["known_mask"]])
    return out

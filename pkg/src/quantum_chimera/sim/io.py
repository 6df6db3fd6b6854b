"""
Readers and writers for scenario outputs.

Every payload is plain CSV. Numbers are written with 17 significant digits so
that a rerun of the same configuration reproduces files byte for byte, and
metadata travels either in a JSON sidecar next to the CSV or in a single
``# {json}`` header line.
"""

import hashlib
import json
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import structlog
from pydantic import BaseModel, Field

from quantum_chimera.exceptions import ConfigError, ShapeError
from quantum_chimera.fluctuations.schemas import (
    ORDERING,
    CovarianceState,
    GridSpec,
    HusimiField,
)
from quantum_chimera.info.schemas import MIScan
from quantum_chimera.ring.coupling import build_coupling
from quantum_chimera.ring.schemas import MeanFieldTrajectory, NetworkParams

logger = structlog.get_logger(__name__)

FLOAT_FORMAT = "%.17g"


class ManifestFile(BaseModel):
    path: str
    sha256: str
    bytes: int


class Manifest(BaseModel):
    """
    Record of one scenario run.

    Attributes:
        name: Scenario name
        status: "complete", or "partial" when a step failed
        files: Every emitted file relative to the output directory
        seed: Initial-condition seed
        generator: Bit generator behind the seed
        config: Flattened scenario configuration
        results: Scalar summaries (regime, I2 at the half cut, ...)
        warnings: Validity warnings raised during the run
        error: Error message of the failing step, if any
        created: UTC timestamp; excluded from reproducibility comparisons
    """

    name: str
    status: str = "complete"
    files: list[ManifestFile] = Field(default_factory=list)
    seed: int
    generator: str
    config: dict[str, Any]
    results: dict[str, Any] = Field(default_factory=dict)
    warnings: list[str] = Field(default_factory=list)
    error: str | None = None
    created: str


def file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def manifest_entry(path: Path, root: Path) -> ManifestFile:
    return ManifestFile(
        path=path.relative_to(root).as_posix(),
        sha256=file_digest(path),
        bytes=path.stat().st_size,
    )


def write_manifest(manifest: Manifest, root: Path) -> Path:
    path = root / "manifest.json"
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def read_manifest(root: Path) -> Manifest:
    return Manifest.model_validate_json((root / "manifest.json").read_text("utf-8"))


def verify_manifest(manifest: Manifest, root: Path) -> list[str]:
    """Paths listed in the manifest that are missing or fail their checksum."""
    bad = []
    for entry in manifest.files:
        path = root / entry.path
        if not path.is_file() or file_digest(path) != entry.sha256:
            bad.append(entry.path)
    return bad


def write_json(path: Path, payload: Mapping[str, Any]) -> Path:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path


def _header_line(path: Path) -> dict[str, Any]:
    with path.open(encoding="utf-8") as f:
        first = f.readline()
    if not first.startswith("# "):
        msg = f"{path} has no '# {{json}}' header line"
        raise ConfigError(msg)
    return json.loads(first[2:])


def write_table(
    path: Path, columns: Mapping[str, Sequence[Any] | np.ndarray]
) -> Path:
    """CSV with a header row; numeric columns use the fixed float format."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    np.savetxt(
        path, data, fmt=FLOAT_FORMAT, delimiter=",", header=",".join(names), comments=""
    )
    return path


def read_table(path: Path) -> dict[str, np.ndarray]:
    with path.open(encoding="utf-8") as f:
        names = f.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {name: data[:, k] for k, name in enumerate(names)}


def trajectory_columns(n_nodes: int) -> list[str]:
    cols = ["t"]
    for node in range(1, n_nodes + 1):
        cols += [f"re_alpha_{node}", f"im_alpha_{node}"]
    return cols


def write_trajectory(
    traj: MeanFieldTrajectory, path: Path, metadata: Mapping[str, Any] | None = None
) -> list[Path]:
    """
    Write t, re(alpha_1), im(alpha_1), ... plus a JSON sidecar.

    Returns:
        The CSV and sidecar paths
    """
    n = traj.coupling.n_nodes
    data = np.empty((len(traj), 2 * n + 1))
    data[:, 0] = traj.times
    data[:, 1::2] = traj.alphas.real
    data[:, 2::2] = traj.alphas.imag
    np.savetxt(
        path,
        data,
        fmt=FLOAT_FORMAT,
        delimiter=",",
        header=",".join(trajectory_columns(n)),
        comments="",
    )
    sidecar = write_json(
        path.with_suffix(".json"),
        {
            "params": traj.params.model_dump(),
            "coupling": {"V": traj.coupling.strength, "d": traj.coupling.d},
            "metadata": dict(traj.metadata) | dict(metadata or {}),
        },
    )
    return [path, sidecar]


def read_trajectory(path: Path) -> MeanFieldTrajectory:
    meta = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
    params = NetworkParams.model_validate(meta["params"])
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    n = (data.shape[1] - 1) // 2
    if n != params.n_nodes:
        msg = f"{path} holds {n} nodes but its sidecar says {params.n_nodes}"
        raise ShapeError(msg)
    return MeanFieldTrajectory(
        times=data[:, 0],
        alphas=data[:, 1::2] + 1j * data[:, 2::2],
        params=params,
        coupling=build_coupling(n, meta["coupling"]["d"], meta["coupling"]["V"]),
        metadata=meta["metadata"],
    )


def write_covariance(
    C: CovarianceState, path: Path, hbar: float, extra: Mapping[str, Any] | None = None
) -> Path:
    """2N x 2N snapshot, row-major, behind a one-line JSON header."""
    header = {"t": C.t, "N": C.n_nodes, "ordering": ORDERING, "hbar": hbar}
    header |= dict(extra or {})
    np.savetxt(
        path,
        C.C,
        fmt=FLOAT_FORMAT,
        delimiter=",",
        header=json.dumps(header, sort_keys=True),
        comments="# ",
    )
    return path


def read_covariance(path: Path) -> tuple[CovarianceState, dict[str, Any]]:
    """Snapshot and its header."""
    header = _header_line(path)
    C = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if C.shape != (2 * header["N"], 2 * header["N"]):
        msg = f"{path}: matrix shape {C.shape} does not match N={header['N']}"
        raise ShapeError(msg)
    return CovarianceState(t=float(header["t"]), C=C), header


def write_husimi(field: HusimiField, path: Path) -> Path:
    """Grid values, one row per p, behind a JSON header describing the grid."""
    header = {
        "center": list(field.grid.center),
        "extent": list(field.grid.extent),
        "resolution": list(field.grid.resolution),
        "layout": "rows p ascending, columns q ascending",
    } | field.metadata
    np.savetxt(
        path,
        field.values,
        fmt=FLOAT_FORMAT,
        delimiter=",",
        header=json.dumps(header, sort_keys=True),
        comments="# ",
    )
    return path


def read_husimi(path: Path) -> HusimiField:
    header = _header_line(path)
    grid = GridSpec(
        center=tuple(header.pop("center")),
        extent=tuple(header.pop("extent")),
        resolution=tuple(header.pop("resolution")),
    )
    header.pop("layout", None)
    values = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    return HusimiField(grid=grid, values=values, metadata=header)


def write_mi_scan(
    scan: MIScan, path: Path, metadata: Mapping[str, Any] | None = None
) -> list[Path]:
    write_table(
        path,
        {
            "L": scan.L,
            "S2_A": scan.s2_a,
            "S2_B": scan.s2_b,
            "S2_AB": scan.s2_ab,
            "I2": scan.i2,
        },
    )
    sidecar = write_json(
        path.with_suffix(".json"),
        {
            "partition": "A = nodes 1..L, B = nodes L+1..N (1-based, contiguous)",
            "units": "nats",
            "clipped_L": [int(L) for L in scan.L[scan.clipped.astype(bool)]],
            "asymmetry": scan.asymmetry(),
        }
        | dict(metadata or {}),
    )
    return [path, sidecar]


def write_expectations(
    times: np.ndarray, mean_fields: np.ndarray, occupations: np.ndarray, path: Path
) -> Path:
    """t, re<a_l>, im<a_l>, <a_l^dag a_l> for every site."""
    columns: dict[str, np.ndarray] = {"t": times}
    for site in range(mean_fields.shape[1]):
        columns[f"re_a_{site + 1}"] = mean_fields[:, site].real
        columns[f"im_a_{site + 1}"] = mean_fields[:, site].imag
        columns[f"n_{site + 1}"] = occupations[:, site]
    return write_table(path, columns)


def write_density(rho: np.ndarray, path: Path) -> Path:
    """Density matrix with real and imaginary parts interleaved per column."""
    data = np.empty((rho.shape[0], 2 * rho.shape[1]))
    data[:, 0::2] = rho.real
    data[:, 1::2] = rho.imag
    np.savetxt(path, data, fmt=FLOAT_FORMAT, delimiter=",")
    return path


def read_density(path: Path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    return data[:, 0::2] + 1j * data[:, 1::2]

"""Model container: a zip of .npy members plus a JSON header.

Members:
    header.json   format version, EsnConfig, seed, tags (config hash, suite, alpha)
    w_in.npy      D x N float64
    a_row.npy, a_col.npy, a_val.npy   coordinate triplets of the adjacency
    w_out.npy     N x D float64 (absent for an untrained model)

Entries are written with a fixed timestamp so identical models give identical
bytes, and arrays round-trip bit-exactly.
"""

import io
import json
import zipfile
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import sparse

from workflow.errors import ArtifactError, ConfigError

from .types import EsnConfig, EsnModel

FORMAT_VERSION = 1
_FIXED_DATE = (1980, 1, 1, 0, 0, 0)


def _write_member(zf: zipfile.ZipFile, name: str, payload: bytes) -> None:
    info = zipfile.ZipInfo(name, date_time=_FIXED_DATE)
    info.compress_type = zipfile.ZIP_DEFLATED
    info.external_attr = 0o644 << 16
    zf.writestr(info, payload)


def _npy_bytes(array: np.ndarray) -> bytes:
    buffer = io.BytesIO()
    np.lib.format.write_array(buffer, np.ascontiguousarray(array), allow_pickle=False)
    return buffer.getvalue()


def save_model(path: Path, model: EsnModel, tags: Optional[Dict[str, object]] = None) -> None:
    """Write the model container, creating parent dirs if needed."""
    path.parent.mkdir(parents=True, exist_ok=True)
    coo = model.a.tocoo()
    header = {
        "format_version": FORMAT_VERSION,
        "config": model.cfg.as_dict(),
        "seed": model.cfg.seed,
        "trained": model.trained,
        "tags": tags or {},
    }
    with zipfile.ZipFile(path, "w") as zf:
        _write_member(zf, "header.json", json.dumps(header, indent=2, sort_keys=True).encode())
        _write_member(zf, "w_in.npy", _npy_bytes(model.w_in))
        _write_member(zf, "a_row.npy", _npy_bytes(coo.row.astype(np.int64)))
        _write_member(zf, "a_col.npy", _npy_bytes(coo.col.astype(np.int64)))
        _write_member(zf, "a_val.npy", _npy_bytes(coo.data.astype(np.float64)))
        if model.w_out is not None:
            _write_member(zf, "w_out.npy", _npy_bytes(model.w_out))


def _read_array(zf: zipfile.ZipFile, name: str) -> np.ndarray:
    with zf.open(name) as f:
        return np.lib.format.read_array(io.BytesIO(f.read()), allow_pickle=False)


def load_model(path: Path) -> Tuple[EsnModel, dict]:
    """Read a model container; returns the model and its header."""
    if not path.exists():
        raise ArtifactError(f"model file not found: {path}")
    try:
        with zipfile.ZipFile(path) as zf:
            header = json.loads(zf.read("header.json"))
            cfg = EsnConfig(**header["config"])
            w_in = _read_array(zf, "w_in.npy")
            rows = _read_array(zf, "a_row.npy")
            cols = _read_array(zf, "a_col.npy")
            vals = _read_array(zf, "a_val.npy")
            w_out = _read_array(zf, "w_out.npy") if "w_out.npy" in zf.namelist() else None
    except (zipfile.BadZipFile, KeyError, ValueError, TypeError, ConfigError) as e:
        raise ArtifactError(f"unreadable model file {path}: {e}") from e
    if header.get("format_version") != FORMAT_VERSION:
        raise ArtifactError(f"{path}: unsupported format version {header.get('format_version')}")
    a = sparse.csr_matrix((vals, (rows, cols)), shape=(cfg.D, cfg.D))
    return EsnModel(cfg=cfg, w_in=w_in, a=a, w_out=w_out), header

"""
Witness file persistence.

Witness sets are stored as JSON with complex numbers as [re, im] pairs, so a
save/load round trip is exact to the last bit. Every solution is re-validated
against the stored parameters on load.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, List, Union

import numpy as np

from .. import __version__
from ..config import DEFAULT_TOLERANCES
from ..core.formats import Format
from ..core.segre_system import INDEX_ORDER, SecantProfile, SliceParams, Solution, revalidate
from ..errors import RankBoundError, WitnessFileError
from ..homotopy.monodromy import StopReason, WitnessMeta, WitnessSet
from .metrics import run_metrics

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def encode_complex(array: np.ndarray) -> Any:
    """Nested lists with every complex entry as [re, im]."""
    array = np.asarray(array, dtype=np.complex128)
    if array.ndim == 0:
        return [float(array.real), float(array.imag)]
    return [encode_complex(item) for item in array]


def decode_complex(data: Any, shape: tuple) -> np.ndarray:
    """Inverse of encode_complex, checked against the expected shape."""
    if 0 in shape:
        if np.asarray(data, dtype=object).size != 0:
            raise ValueError(f"expected an empty array of shape {tuple(shape)}")
        return np.zeros(shape, dtype=np.complex128)
    try:
        pairs = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ValueError(f"not an array of [re, im] pairs: {e}") from e
    if pairs.shape != tuple(shape) + (2,):
        raise ValueError(f"shape {pairs.shape[:-1]} does not match expected {tuple(shape)}")
    if not np.all(np.isfinite(pairs)):
        raise ValueError("non-finite entries")
    return pairs[..., 0] + 1j * pairs[..., 1]


def witness_to_dict(ws: WitnessSet) -> dict:
    profile, params, meta = ws.profile, ws.params, ws.meta
    return {
        "schema_version": SCHEMA_VERSION,
        "format": profile.format.to_dict(),
        "profile": profile.to_dict(),
        "params": {
            "A": encode_complex(params.A),
            "B": encode_complex(params.B),
            "H": encode_complex(params.H),
            "u0": encode_complex(params.u0),
        },
        "solutions": [
            {"u": encode_complex(sol.u), "t": encode_complex(sol.t),
             "residual": sol.residual_norm}
            for sol in ws.solutions
        ],
        "meta": {
            "rng_seed": meta.rng_seed,
            "loops_run": meta.loops_run,
            "loop_paths": meta.loop_paths,
            "paths_failed": meta.paths_failed,
            "stall_counter": meta.stall_counter,
            "target_count": meta.target_count,
            "stop_reason": meta.stop_reason.value,
            "fiber_collisions": meta.fiber_collisions,
            "tool_version": __version__,
            "index_order": INDEX_ORDER,
        },
    }


def save_witness(ws: WitnessSet, path: Union[str, Path]) -> Path:
    """Write the witness set atomically (temporary file, then rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(witness_to_dict(ws), indent=1)
    tmp_name = None
    try:
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(payload)
        os.replace(tmp_name, path)
    except OSError as e:
        if tmp_name is not None and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise WitnessFileError(f"Could not write witness file {path}: {e}") from e
    run_metrics.record_checkpoint(str(path))
    logger.info(f"💾 Saved {len(ws)} witness points to {path}")
    return path


def witness_from_dict(data: dict, validation_tol: float = DEFAULT_TOLERANCES.validation_tol
                      ) -> WitnessSet:
    """Rebuild and validate a witness set from its JSON form."""
    try:
        index_order = data["meta"].get("index_order", INDEX_ORDER)
        if index_order != INDEX_ORDER:
            raise WitnessFileError(f"Unsupported index order {index_order!r}")
        fmt_data = data["format"]
        fmt = Format(fmt_data["a"], fmt_data["b"], fmt_data["c"], fmt_data["r"])
        if (fmt.a, fmt.b, fmt.c) != (fmt_data["a"], fmt_data["b"], fmt_data["c"]):
            raise WitnessFileError("Format sides must be stored sorted")
        profile = SecantProfile(format=fmt, dim=int(data["profile"]["dim"]))
        if (data["profile"].get("codim"), data["profile"].get("fiber_dim")) != (
                profile.codim, profile.fiber_dim):
            raise WitnessFileError("Stored codim/fiber_dim inconsistent with dim")

        raw = data["params"]
        abc, ell, m, n_u = fmt.ambient_dim, profile.codim, profile.fiber_dim, fmt.n_u
        params = SliceParams(
            A=decode_complex(raw["A"], (abc, ell)),
            B=decode_complex(raw["B"], (abc,)),
            H=decode_complex(raw["H"], (m, n_u)),
            u0=decode_complex(raw["u0"], (n_u,)),
        )
        meta_raw = data["meta"]
        meta = WitnessMeta(
            rng_seed=int(meta_raw["rng_seed"]),
            loops_run=int(meta_raw["loops_run"]),
            loop_paths=int(meta_raw.get("loop_paths", 0)),
            paths_failed=int(meta_raw["paths_failed"]),
            stall_counter=int(meta_raw["stall_counter"]),
            target_count=meta_raw.get("target_count"),
            stop_reason=StopReason(meta_raw.get("stop_reason", StopReason.NOT_STOPPED.value)),
            fiber_collisions=int(meta_raw.get("fiber_collisions", 0)),
        )
        entries = data["solutions"]
    except WitnessFileError:
        raise
    except (KeyError, TypeError, ValueError, RankBoundError) as e:
        raise WitnessFileError(f"Witness file schema violation: {e}") from e

    solutions: List[Solution] = []
    for index, entry in enumerate(entries):
        try:
            sol = Solution(u=decode_complex(entry["u"], (n_u,)),
                           t=decode_complex(entry["t"], (ell,)))
        except (KeyError, TypeError, ValueError) as e:
            raise WitnessFileError(f"Solution {index} is malformed: {e}", index) from e
        if not revalidate(profile, params, sol, validation_tol):
            raise WitnessFileError(
                f"Solution {index} has residual {sol.residual_norm:.3e} above {validation_tol:.1e}",
                index)
        solutions.append(sol)

    return WitnessSet(profile=profile, params=params, solutions=solutions, meta=meta)


def load_witness(path: Union[str, Path],
                 validation_tol: float = DEFAULT_TOLERANCES.validation_tol) -> WitnessSet:
    """Read a witness file; every solution must re-validate or the file is rejected."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise WitnessFileError(f"Could not read witness file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise WitnessFileError(f"Witness file {path} is not valid JSON: {e}") from e

    ws = witness_from_dict(data, validation_tol)
    logger.info(f"📂 Loaded {len(ws)} witness points for {ws.profile.format.label()} from {path}")
    return ws

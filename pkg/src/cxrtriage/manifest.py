"""Run manifests: every CLI command records what it did next to its output.

A manifest holds the command name, all resolved parameters, the tool version,
and SHA-256 digests of the input files; re-running the command with the same
inputs and parameters reproduces the outputs byte-identically.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__
from .ioutil import atomic_write, sha256_file


def build_manifest(
    command: str,
    parameters: Mapping,
    inputs: Sequence[str | Path],
    outputs: Sequence[str | Path],
) -> dict:
    return {
        "command": command,
        "tool_version": __version__,
        "parameters": {k: _plain(v) for k, v in sorted(parameters.items())},
        "inputs": {
            str(p): {"sha256": sha256_file(p), "bytes": Path(p).stat().st_size}
            for p in inputs
        },
        "outputs": [str(p) for p in outputs],
    }


def manifest_path(primary_output: str | Path) -> Path:
    primary_output = Path(primary_output)
    return primary_output.with_name(primary_output.name + ".manifest.json")


def write_manifest(manifest: Mapping, primary_output: str | Path) -> Path:
    path = manifest_path(primary_output)
    with atomic_write(path) as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def _plain(value):
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value

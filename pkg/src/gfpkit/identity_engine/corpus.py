"""Loading identity corpora from directories of ``.gfpid`` files."""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from .exprs import IdentityDef
from .parser import DslError, parse_identity

MANIFEST = "manifest.json"


class CorpusError(ValueError):
    def __init__(self, path: Path, cause: Exception):
        self.path = path
        self.cause = cause
        super().__init__(f"{path}: {cause}")


def bundled_corpus_dir() -> Path:
    return Path(str(resources.files("gfpkit") / "corpus"))


def _natural_key(ident: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", ident)]


def _group_rank(ident: str) -> int:
    # P1.x, then P2.x, then the I-series
    return 0 if ident.startswith("P") else 1


def load_file(path: Path) -> IdentityDef:
    try:
        return parse_identity(Path(path).read_text(encoding="utf-8"), source=str(path))
    except DslError as exc:
        raise CorpusError(Path(path), exc) from exc


def load_corpus(directory: str | Path | None = None) -> list[IdentityDef]:
    """All identities in ``directory``, in manifest order when a manifest exists."""
    directory = Path(directory) if directory is not None else bundled_corpus_dir()
    files = sorted(directory.glob("*.gfpid"))
    defs = [load_file(p) for p in files]
    seen: dict = {}
    for p, d in zip(files, defs):
        if d.id in seen:
            raise CorpusError(p, ValueError(f"duplicate identity id {d.id} (also in {seen[d.id]})"))
        seen[d.id] = p.name
    manifest = directory / MANIFEST
    if manifest.exists():
        order = {e["id"]: k for k, e in enumerate(json.loads(manifest.read_text(encoding="utf-8")))}
        return sorted(defs, key=lambda d: (order.get(d.id, len(order)), _natural_key(d.id)))
    return sorted(defs, key=lambda d: (_group_rank(d.id), _natural_key(d.id)))


def check_manifest(directory: str | Path | None = None) -> list[str]:
    """Discrepancies between the manifest and the files on disk (empty if consistent)."""
    directory = Path(directory) if directory is not None else bundled_corpus_dir()
    problems = []
    entries = json.loads((directory / MANIFEST).read_text(encoding="utf-8"))
    listed = set()
    for e in entries:
        path = directory / e["file"]
        listed.add(e["file"])
        if not path.exists():
            problems.append(f"{e['id']}: missing file {e['file']}")
            continue
        d = load_file(path)
        if d.id != e["id"]:
            problems.append(f"{e['file']}: declares {d.id}, manifest says {e['id']}")
        expected = f"{e['group']}.{e['part']}" if e["group"] != "I" else f"I{e['part']}"
        if expected != e["id"]:
            problems.append(f"{e['id']}: group/part {e['group']}/{e['part']} do not match the id")
    for p in directory.glob("*.gfpid"):
        if p.name not in listed:
            problems.append(f"{p.name}: not listed in the manifest")
    return problems

"""Reading group files and the fixtures shipped with the package.

A group file has a ``degree d`` line followed by one generator per line,
either as an image list ``[i0,i1,...]`` or in cycle notation ``(a b c)(d e)``.
Points are numbered from 0.  Everything after ``#`` is a comment.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from .perm import PermGroup, Permutation


class FixtureError(ValueError):
    """A group file could not be parsed."""


def parse_group(text: str, name: str | None = None) -> PermGroup:
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"degree\s+(\d+)", line)
        if m:
            if degree is not None:
                raise FixtureError(f"line {lineno}: degree given twice")
            degree = int(m.group(1))
            continue
        if degree is None:
            raise FixtureError(f"line {lineno}: generator before the degree line")
        try:
            if line.startswith("["):
                images = json.loads(line)
                if len(images) != degree:
                    raise FixtureError(f"line {lineno}: {len(images)} images for degree {degree}")
                gens.append(Permutation(images))
            elif line.startswith("("):
                gens.append(Permutation.from_cycles(line, degree))
            else:
                raise FixtureError(f"line {lineno}: cannot parse {line[:40]!r}")
        except FixtureError:
            raise
        except (ValueError, TypeError) as exc:
            raise FixtureError(f"line {lineno}: {exc}") from exc
    if degree is None:
        raise FixtureError("missing degree line")
    if not gens:
        raise FixtureError("no generators")
    return PermGroup(gens, degree, name=name)


def load_group(path: str | Path, name: str | None = None) -> PermGroup:
    path = Path(path)
    return parse_group(path.read_text(), name=name or path.stem)


def fixture_names() -> list[str]:
    data = resources.files("polyatlas") / "data"
    return sorted(p.name[:-4] for p in data.iterdir() if p.name.endswith(".txt"))


def fixture_path(name: str) -> Path:
    path = Path(str(resources.files("polyatlas") / "data" / f"{name}.txt"))
    if not path.exists():
        raise FixtureError(f"no shipped fixture named {name!r}; known: {', '.join(fixture_names())}")
    return path


def load_fixture(name: str) -> PermGroup:
    """A shipped group by name, e.g. ``"M12"`` or ``"PSL27"``."""
    return load_group(fixture_path(name), name=name)


def resolve_group(spec: str) -> PermGroup:
    """A path to a group file, or the name of a shipped fixture."""
    path = Path(spec)
    if path.exists():
        return load_group(path)
    return load_fixture(spec)

"""Regenerate the shipped .apnet documents from the built-in catalog.

Writes one canonical document per attack into src/attacknets/models/;
run after any catalog change and commit the result.
"""

import re
from pathlib import Path

from attacknets.catalog import builtin_models
from attacknets.dsl import serialize


def slugify(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


def main() -> None:
    target = Path(__file__).resolve().parent.parent / "src" / "attacknets" / "models"
    target.mkdir(parents=True, exist_ok=True)
    for model in builtin_models():
        filename = f"{int(model.id):02d}-{slugify(model.name)}.apnet"
        (target / filename).write_text(serialize(model), encoding="utf-8")
        print(filename)


if __name__ == "__main__":
    main()

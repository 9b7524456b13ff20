"""Bundled example surfaces."""
from pathlib import Path

DATA_DIR = Path(__file__).parent


def example_path(name: str) -> Path:
    p = DATA_DIR / (name if name.endswith(".quartic") else name + ".quartic")
    if not p.exists():
        raise FileNotFoundError(f"no bundled example {name!r}; have {sorted(q.stem for q in DATA_DIR.glob('*.quartic'))}")
    return p


def examples() -> list[str]:
    return sorted(q.stem for q in DATA_DIR.glob("*.quartic"))

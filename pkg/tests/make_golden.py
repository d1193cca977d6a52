"""Regenerate the golden files: ``python3 tests/make_golden.py``.

Only rerun after an intentional output change; the diff is the review.
"""
import contextlib
import io
from pathlib import Path

from qweyl.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    **{f"hhat_s{s}.json": ["expand", "planewave", "--s", str(s), "--format", "json"] for s in range(5)},
    "hhat_s1.tex": ["expand", "planewave", "--s", "1", "--format", "latex"],
    "chat_plus_s0.tex": ["expand", "chat", "--side", "plus", "--s", "0", "--gammas", "1,1,1,1,1",
                         "--shift", "-4", "--format", "latex"],
    "chat_minus_s0.tex": ["expand", "chat", "--side", "minus", "--s", "0", "--gammas", "1,1,1,1,1",
                          "--shift", "0", "--format", "latex"],
    "order_ascending.txt": ["verify", "weyl", "--side", "plus", "--s-max", "2", "--draws", "1", "--seed", "1"],
    "order_descending.txt": ["verify", "weyl", "--side", "plus", "--s-max", "2", "--draws", "1", "--seed", "1",
                             "--order", "descending"],
}


def render(argv) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(argv)
    return buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (GOLDEN / name).write_text(render(argv))
        print("wrote", name)

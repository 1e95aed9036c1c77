"""Regenerate the bundled demo dataset (src/netreel/data/demo_css.json).

Synthetic perception tensor over 21 people in three groups of seven.
Each of the 21 perceivers reports each ordered pair independently with a
group-structured probability, so averaging reports yields a probabilistic
graph with planted communities, a handful of cross-group bridges, and
edge probabilities spread over the whole unit interval.
"""

import json
from pathlib import Path

import numpy as np

N = 21
GROUPS = [range(0, 7), range(7, 14), range(14, 21)]
P_WITHIN = 0.72
P_CROSS = 0.05
BRIDGES = {  # directed cross-group pairs reported at a middling rate
    (6, 7): 0.45,
    (7, 6): 0.40,
    (13, 14): 0.50,
    (14, 13): 0.35,
    (20, 0): 0.45,
    (0, 20): 0.40,
    (3, 10): 0.30,
    (17, 5): 0.30,
}
SEED = 20210907


def pair_probability(i: int, j: int) -> float:
    if (i, j) in BRIDGES:
        return BRIDGES[(i, j)]
    same = any(i in g and j in g for g in GROUPS)
    return P_WITHIN if same else P_CROSS


def main() -> None:
    rng = np.random.default_rng(SEED)
    q = np.zeros((N, N))
    for i in range(N):
        for j in range(N):
            if i != j:
                q[i, j] = pair_probability(i, j)
    cells = (rng.random((N, N, N)) < q[None, :, :]).astype(int)
    for k in range(N):
        np.fill_diagonal(cells[k], 0)
    payload = {"relation": "demo", "n": N, "perceivers": cells.tolist()}
    out = Path(__file__).resolve().parents[1] / "src" / "netreel" / "data" / "demo_css.json"
    out.write_text(json.dumps(payload, separators=(",", ":")), encoding="utf-8")
    print(f"wrote {out} ({out.stat().st_size} bytes)")


if __name__ == "__main__":
    main()

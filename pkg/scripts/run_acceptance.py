#!/usr/bin/env python3
"""Run the desk-scale figure presets and print what each one found.

For every requested figure this writes the panel CSVs and manifest under
OUT_DIR/fig<id>/ and then reports, per panel, the optimum n (sweeps), the
saturation bounds (multi-commodity flow) or the fitted tail slopes
(histograms). Usage:

    python scripts/run_acceptance.py [--figures 1,4,5b] [--out-dir results/acceptance] [--workers 4]
"""

import argparse
import json
import logging
import sys
from pathlib import Path

# Project root on path for cli.config and the netflux packages
if __name__ == "__main__":
    _root = Path(__file__).resolve().parent.parent
    if str(_root) not in sys.path:
        sys.path.insert(0, str(_root))

import pandas as pd

from cli.config import get_settings
from experiments import FIGURE_IDS, reproduce_figure

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
logger = logging.getLogger(__name__)


def summarize_manifest(manifest_path: Path) -> list[str]:
    """One report line per panel of a written manifest."""
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    lines = []
    for panel in manifest["panels"]:
        outputs = panel["outputs"]
        head = f"fig{manifest['figure_id']} {panel['name']}:"
        if "optimum" in outputs:
            opt = outputs["optimum"]
            lines.append(
                f"{head} n_opt={opt['n_opt']} per_n={opt['value']:.4g} "
                f"boundary={opt['at_boundary']} sqrt(N/k)={opt['validity_scale']:.3g}"
            )
        elif "n_star" in outputs:
            ns = outputs["n_star"]
            lines.append(f"{head} n*: lower={ns['lower']} upper={ns['upper']} recursion={ns['recursion']}")
        else:
            tail = [name for name in outputs["csv"] if name.endswith("_tail.csv")]
            if tail:
                df = pd.read_csv(manifest_path.parent / tail[0])
                slopes = ", ".join(f"n={int(r.n)}: {r.tail_slope:.2f}" for r in df.itertuples())
                lines.append(f"{head} tail slopes {slopes} (theory {df['theory_slope'].iloc[0]:.2f})")
            else:
                lines.append(f"{head} {len(outputs['csv'])} files")
    return lines


def main() -> int:
    settings = get_settings()
    parser = argparse.ArgumentParser(description="Desk-scale acceptance runs for every figure preset")
    parser.add_argument(
        "--figures",
        type=str,
        default=",".join(FIGURE_IDS),
        help="Comma-separated figure ids (default: all)",
    )
    parser.add_argument("--out-dir", type=Path, default=Path(settings.output_dir) / "acceptance")
    parser.add_argument("--seed", type=int, default=settings.seed)
    parser.add_argument("--workers", type=int, default=settings.workers)
    parser.add_argument("--edge-list", type=str, default=None, help="Real network for figure 2a")
    args = parser.parse_args()

    figures = [f.strip() for f in args.figures.split(",") if f.strip()]
    unknown = [f for f in figures if f not in FIGURE_IDS]
    if unknown:
        parser.error(f"unknown figure ids {unknown}; choose from {', '.join(FIGURE_IDS)}")

    report: list[str] = []
    for figure_id in figures:
        logger.info("Reproducing figure %s (desk scale)", figure_id)
        manifest = reproduce_figure(
            figure_id,
            "desk",
            args.out_dir / f"fig{figure_id}",
            seed=args.seed,
            workers=args.workers,
            edge_list=args.edge_list,
        )
        report.extend(summarize_manifest(manifest))

    print("\n".join(report))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Write affine and projective SVG views of every stage of one instance."""

import argparse
from pathlib import Path

from quadric_weierstrass.families import EulerInstance, KlmInstance, euler_quadrics, klm_quadrics
from quadric_weierstrass.plot import PlotConfig, affine_svg, projective_svg
from quadric_weierstrass.point_transport import run_full


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", choices=("euler", "klm"), default="klm")
    parser.add_argument("--params", type=int, nargs="+", default=[2, 3, 5], help="M N or k l m")
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--samples", type=int, default=400)
    args = parser.parse_args()

    if args.family == "euler":
        A, B, x = euler_quadrics(EulerInstance(*args.params))
    else:
        A, B, x = klm_quadrics(KlmInstance(*args.params))
    trace = run_full(A, B, x)
    stages = [(0, trace.quadrics.cubic, trace.quadrics.z)]
    stages += [(s.index, s.cubic_after, s.point_after) for s in trace.steps]

    config = PlotConfig(samples=args.samples)
    args.out.mkdir(parents=True, exist_ok=True)
    for index, C, P in stages:
        for view, render in (("affine", affine_svg), ("projective", projective_svg)):
            path = args.out / f"stage{index}_{view}.svg"
            path.write_text(render(C, [P], config, title=f"C({index}) {view} view"))
            print(path)


if __name__ == "__main__":
    main()

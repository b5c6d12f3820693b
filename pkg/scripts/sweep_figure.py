"""Fringe shift against eps1 - eps2 on log-log axes, optical pairs plus the microwave row."""
import sys
from pathlib import Path

from twomedia import inversion, svgplot, synthesis

V_HOR = 480_000.0

table = synthesis.epsilon_sweep(synthesis.figure3_pairs(microwave=True), V_HOR)
fit = inversion.fit_loglog_slope(table)
print(f"{'pair':26s} {'eps1-eps2':>12s} {'X_m/X_o raw':>14s} {'reduced':>14s}")
for r in table.rows:
    print(f"{r.label:26s} {r.deps:12.6g} {r.x_m_raw:14.6g} {r.x_m:14.6g}")
print(f"slope {fit.slope:.12f}, r^2 {fit.r_squared:.12f}, max |log resid| {fit.max_residual:.2e}")

out = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
out.mkdir(parents=True, exist_ok=True)
(out / "fig_sweep.svg").write_text(
    svgplot.sweep_figure(list(table.column("deps")), list(table.column("x_m")), fit,
                         title=f"X_m vs eps1 - eps2 at v_hor = {V_HOR / 1e3:.0f} km/s"),
    encoding="utf-8")
print(f"wrote {out / 'fig_sweep.svg'}")

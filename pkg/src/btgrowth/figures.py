"""Matplotlib renderings of censuses, growth curves, and entropy fits."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_figure(fig, path) -> None:
    fig.savefig(path, dpi=150, metadata={"Software": "btgrowth"})
    plt.close(fig)


def roots_figure(type_name, coeffs):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(coeffs)), coeffs, color="#33557f")
    ax.set_xlabel("length")
    ax.set_ylabel("elements")
    ax.set_title(f"{type_name}: finite Weyl length distribution")
    fig.tight_layout()
    return fig


def census_figure(census):
    fig, ax = plt.subplots(figsize=(6, 4))
    lengths = range(len(census.counts))
    ax.plot(lengths, census.counts, "o-", color="#33557f")
    ax.set_xlabel("length")
    ax.set_ylabel("elements")
    ax.set_title(f"{census.type_name}: affine Weyl census")
    fig.tight_layout()
    return fig


def series_figure(type_name, q, s_values):
    fig, ax = plt.subplots(figsize=(6, 4))
    radii = range(len(s_values))
    ax.semilogy(radii, [float(v) for v in s_values], color="#33557f")
    ax.set_xlabel("R")
    ax.set_ylabel(f"S({q}, R)")
    ax.set_title(f"{type_name}: growth series partial sums, q={q}")
    fig.tight_layout()
    return fig


def tree_census_figure(records):
    fig, ax = plt.subplots(figsize=(6, 4))
    radii = [rec.radius for rec in records]
    ax.semilogy(radii, [max(rec.total, 1) for rec in records], "o-", label="total")
    ax.semilogy(radii, [max(rec.in_eprime, 1) for rec in records], "s-", label="intermediate")
    ax.semilogy(radii, [max(rec.in_f, 1) for rec in records], "^-", label="base tree")
    first = records[0]
    ax.set_xlabel("extension radius R")
    ax.set_ylabel("vertices")
    ax.set_title(f"ball censuses, q={first.q}, e={first.e}, f={first.f}")
    ax.legend()
    fig.tight_layout()
    return fig


def verify_figure(report):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    series = (
        ("base metric", report.ff_report, "#33557f"),
        ("extension metric", report.fe_report, "#b2552f"),
        ("extension building", report.ee_report, "#3f7f4f"),
    )
    for label, rep, color in series:
        xs = [r for r, _ in rep.samples]
        ys = [y for _, y in rep.samples]
        ax.plot(xs, ys, ".", color=color, markersize=3)
        lo, hi = rep.window
        yfit = [y for x, y in rep.samples if lo <= x <= hi]
        xfit = [x for x, _ in rep.samples if lo <= x <= hi]
        if xfit:
            x0, x1 = xfit[0], xfit[-1]
            mid_y = sum(yfit) / len(yfit)
            mid_x = sum(xfit) / len(xfit)
            ax.plot(
                [x0, x1],
                [mid_y + rep.slope * (x0 - mid_x), mid_y + rep.slope * (x1 - mid_x)],
                "-",
                color=color,
                label=f"{label}: slope {rep.slope:.4f}",
            )
    ax.set_xlabel("radius")
    ax.set_ylabel("log volume")
    ax.set_title(
        f"{report.target}: q={report.params.q}, e={report.params.e}, f={report.params.f}; "
        f"defects {report.defect1:.2e}, {report.defect2:.2e}"
    )
    ax.legend()
    fig.tight_layout()
    return fig

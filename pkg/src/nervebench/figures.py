"""Matplotlib renderings written next to the delimited outputs."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

VERDICT_COLORS = {"pass": "#2a9d54", "fail": "#c8422e", "inconclusive": "#d7a514"}


def render_nerve_figure(pkg, out_path):
    """Layered drawing of a nerve total, one row per simplex dimension."""
    from .nerve import chain_objects

    if not pkg.total.objects:
        fig, ax = plt.subplots(figsize=(3, 2))
        ax.set_title(f"{pkg.total.name} (empty)")
        ax.axis("off")
        fig.savefig(out_path, dpi=150)
        plt.close(fig)
        return
    dims = {o: pkg.dim(o) for o in pkg.total.objects}
    by_level = {}
    for o in pkg.total.objects:
        by_level.setdefault(dims[o], []).append(o)
    pos = {}
    for lvl, objs in sorted(by_level.items()):
        for i, o in enumerate(sorted(objs)):
            pos[o] = (i - (len(objs) - 1) / 2.0, -lvl)
    width = max(3.0, 1.4 * max((len(v) for v in by_level.values()), default=1))
    height = max(2.5, 1.2 * (len(by_level) + 1))
    fig, ax = plt.subplots(figsize=(width, height))
    vertical = set(pkg.vertical_morphisms())
    for m in pkg.total.morphisms:
        if pkg.total.is_identity(m.name):
            continue
        x0, y0 = pos[m.src]
        x1, y1 = pos[m.tgt]
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops=dict(
                arrowstyle="-|>",
                linestyle="dashed" if m.name in vertical else "solid",
                color="#777777" if m.name in vertical else "#222222",
                shrinkA=12,
                shrinkB=12,
            ),
        )
    for o, (x, y) in pos.items():
        label = ",".join(chain_objects(pkg.shape, pkg.chain_of(o)))
        ax.text(
            x,
            y,
            f"({label})",
            ha="center",
            va="center",
            fontsize=9,
            bbox=dict(boxstyle="round,pad=0.25", fc="#eef3fb", ec="#335a8c"),
        )
    ax.set_xlim(min(x for x, _ in pos.values()) - 1, max(x for x, _ in pos.values()) + 1)
    ax.set_ylim(min(y for _, y in pos.values()) - 0.7, 0.7)
    ax.set_title(f"{pkg.total.name} (dashed = vertical)")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def render_report_figure(records, out_path, title="verification suite"):
    """Verdict counts per check family plus total wall time."""
    families = {}
    for rec in records:
        fam = families.setdefault(rec["check"], {"pass": 0, "fail": 0, "inconclusive": 0})
        fam[rec["verdict"]] = fam.get(rec["verdict"], 0) + 1
    names = sorted(families)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(names) + 2), 3.6))
    bottoms = [0] * len(names)
    for verdict in ("pass", "inconclusive", "fail"):
        heights = [families[n].get(verdict, 0) for n in names]
        ax.bar(
            range(len(names)),
            heights,
            bottom=bottoms,
            color=VERDICT_COLORS[verdict],
            label=verdict,
            width=0.6,
        )
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("checks")
    total_time = sum(rec.get("seconds", 0.0) for rec in records)
    ax.set_title(f"{title} — {len(records)} checks, {total_time:.2f}s")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)

"""Golden-table plumbing: loaders, defect detection, name repair and label fitting.

The pass/fail verdict on the tables themselves lives in test_acceptance.py.
"""

import pytest

import golden

EXACT = [
    "figsu8intrQArank0",
    "figsu8QArank1intr",
    "figsu8coQArank1inC0",
    "figsu8QArank2intr",
    "figsu8coQArank2inC0",
    "figsu8canQArank2",
    "figsu8cancoQArank2",
    "figsu8QArank0inCIII",
    "figsu8QArank1inCIII",
    "figsu8QArank2inCIII",
    "figsu8QArank0inC",
    "figsu16canQArank2",
    "figsu16cancoQArank2",
]


def test_every_figure_has_a_setup():
    assert set(golden.figure_setups()) <= set(golden.partition_tables())
    assert len(golden.figure_setups()) == 26


@pytest.mark.parametrize("figure", EXACT)
def test_clean_figures_rebuild_exactly(figure):
    assert golden.figure_defects(figure) == []
    assert golden.compare(figure).ok


@pytest.mark.parametrize("figure", sorted(set(golden.figure_setups()) - set(EXACT)))
def test_mismatched_figures_are_internally_inconsistent(figure):
    # A mismatch is only accepted when the figure contradicts itself.
    assert not golden.compare(figure).ok
    assert golden.figure_defects(figure)


def test_defect_finder_on_a_clean_figure_with_a_planted_swap(monkeypatch):
    fig = golden.partition_tables()["figsu8QArank1intr"]
    rows = [dict(r, cells=[list(c) for c in r["cells"]]) for r in fig["rows"]]
    a, b = rows[4]["cells"][0], rows[6]["cells"][0]
    a[0], b[0] = b[0], a[0]
    patched = dict(golden.partition_tables(), figsu8QArank1intr=dict(fig, rows=rows))
    monkeypatch.setattr(golden, "partition_tables", lambda: patched)
    assert golden.figure_defects("figsu8QArank1intr")


def test_malformed_entry_reported():
    assert golden.malformed("figsu16intrQArank0") == ["S^11000_1100"]


def test_name_repair_fixes_known_typos():
    raw = [left for left, _ in golden.row_names("figsu8QArank1inCIII")]
    fixed = [left for left, _ in golden.row_names("figsu8QArank1inCIII", repair=True)]
    assert len(set(raw)) < len(raw)
    assert len(set(fixed)) == len(fixed)
    for left, right in golden.row_names("figsu8QArank2inC", repair=True):
        if left and right and left.startswith("W(B_5"):
            assert right.startswith("What(B_5")


def test_parse_name():
    assert golden.parse_name("W(B_101,B^[1];1)", 3) == (0b101, 1, 1)
    assert golden.parse_name("What(B_5,B^[2];10)", 3) == (5, 0, 2)
    assert golden.parse_name("B^[2,01]", 3) == (0, 1, 1)
    assert golden.parse_name("C-B^[1]", 3) is None


@pytest.mark.parametrize("figure", ["figsu8QArank1intr", "figsu8QArank2intr", "figsu8QArank1inCIII"])
def test_label_fit_is_consistent_on_clean_figures(figure):
    fit = golden.fit_labels(figure)
    part = fit.partition
    for (left, right), row in zip(golden.row_names(figure, repair=True), golden.partition_tables()[figure]["rows"]):
        for name, cell in zip((left, right), row["cells"]):
            if not cell or name is None or name in fit.disagreements:
                continue
            triple = golden.parse_name(golden.canon(name), part.p)
            if triple is not None:
                assert part.table[fit.label(triple)] == golden.words(cell)


def test_decomposition_table_blocks_resolve():
    results = golden.decomposition_table_results()
    assert len(results) == 18
    resolved = sorted(f"{b.figure}:{b.symbol}" for b in results if b.ok)
    assert resolved == [
        "figsu8tpcorank1:t_III",
        "figsu8tpintrcorank1inCIII:t_III",
        "figsu8tpintrcorank1inCIII:that_III",
        "figsu8tpintrcorank2:t_II",
        "figsu8tpintrcorank2:that_III",
        "figsu8tpintrrank1inC0:t_I",
        "figsu8tpintrrank1inC0:that_II",
        "figsu8tpintrrank2:that_II",
        "figsu8tprank2inC:t_I",
    ]

from eventsrl.analysis import object_dfg
from eventsrl.augment import AttributeLevel, RoleAssignment
from eventsrl.evaluation import attribute_metrics
from eventsrl.plotting import plot_dfg, plot_role_counts, plot_role_scores
from eventsrl.roles import SemanticRole
from eventsrl.synth import planted_dfg_log

R = SemanticRole
PNG = b"\x89PNG\r\n\x1a\n"


def _twice(tmp_path, draw):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    draw(a)
    draw(b)
    assert a.read_bytes()[:8] == PNG
    assert a.read_bytes() == b.read_bytes()


def test_role_scores_figure(tmp_path):
    rep = attribute_metrics({"x": R.ActorName, "y": R.ObjectName}, {"x": R.ActorName, "y": R.PassiveName})
    _twice(tmp_path, lambda p: plot_role_scores(rep, p))


def test_role_counts_figure(tmp_path):
    assignments = [RoleAssignment(0, i, R.ActionName, "send", AttributeLevel("a")) for i in range(3)]
    assignments.append(RoleAssignment(0, 0, R.ObjectName, "order", AttributeLevel("a")))
    _twice(tmp_path, lambda p: plot_role_counts(assignments, p))


def test_empty_inputs_still_render(tmp_path):
    plot_role_counts([], tmp_path / "c.png")
    plot_role_scores(attribute_metrics({}, {}), tmp_path / "s.png")
    assert (tmp_path / "c.png").read_bytes()[:8] == PNG == (tmp_path / "s.png").read_bytes()[:8]


def test_dfg_figure(tmp_path):
    graph = object_dfg(planted_dfg_log({("submit", "approve", "pay"): 2, ("submit", "reject"): 1}), "declaration")
    _twice(tmp_path, lambda p: plot_dfg(graph, p))

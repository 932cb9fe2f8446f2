"""Independent recomputation of subtree aggregates from raw leaf values."""

from binset.core import BinSeT, Node


def leaf_values(node: Node) -> list[tuple[int, int]]:
    if node.left is None:
        return [(node.tau, node.delta)]
    return leaf_values(node.left) + leaf_values(node.right)


def expected_aggregates(node: Node) -> tuple[int, int, int]:
    """(delta, mu_max, mu_min) straight from the running sums of the leaves."""
    running, sums = 0, []
    for _, value in leaf_values(node):
        running += value
        sums.append(running)
    return running, max(sums), min(sums)


def aggregate_mismatches(tree: BinSeT) -> list[str]:
    bad = []

    def walk(node, path):
        stored = (node.delta, node.mu_max, node.mu_min)
        want = expected_aggregates(node)
        if stored != want:
            bad.append(f"{path or 'root'}: {stored} != {want}")
        if node.left is not None:
            walk(node.left, path + "L")
            walk(node.right, path + "R")

    if tree.root is not None:
        walk(tree.root, "")
    return bad

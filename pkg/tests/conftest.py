import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scholargraph.graph import build_graph
from scholargraph.mining import mine_all
from scholargraph.records import parse_corpus

# Four publications, three scholars; every derived number in the suite is
# recomputable by hand from these lines.
F1_JSONL = "\n".join(
    [
        '{"id":"p1","title":"Early work","year":1998,"authors":[{"id":"s2","name":"Bob","inst":"I2"}],"refs":[],"fields":["CS"]}',
        '{"id":"p2","title":"Joint paper","year":2010,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s2","name":"Bob","inst":"I2"}],"refs":["p1"],"fields":["CS"]}',
        '{"id":"p3","title":"Follow-up","year":2011,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s2","name":"Bob","inst":"I2"}],"refs":["p2"],"fields":["CS"]}',
        '{"id":"p4","title":"New direction","year":2012,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s3","name":"Carol","inst":"I1"}],"refs":["p1","p2"],"fields":["CS"]}',
    ]
)

F1_GEO = {"I1": (41.0, -71.5), "I2": (52.1, 13.4)}


@pytest.fixture(scope="session")
def f1_records():
    result = parse_corpus(F1_JSONL.splitlines())
    assert not result.diagnostics
    return result.records


@pytest.fixture()
def f1_graph(f1_records):
    return build_graph(f1_records, geo_table=F1_GEO)


@pytest.fixture()
def f1_mined(f1_records):
    graph = build_graph(f1_records, geo_table=F1_GEO)
    mine_all(graph)
    return graph

#!/usr/bin/env python3
"""Record API fixtures for the UI test suite.

Builds the shared 4-publication fixture corpus with the CLI, serves it
with the real HTTP server, replays the exact requests the web client
makes, and freezes the responses into tests/fixtures/fixtures.json.
Re-run after any API change: `npm run record-fixtures`.
"""

import json
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path

FIXTURE_CORPUS = "\n".join(
    [
        '{"id":"p1","title":"Early work","year":1998,"authors":[{"id":"s2","name":"Bob","inst":"I2"}],"refs":[],"fields":["CS"]}',
        '{"id":"p2","title":"Joint paper","year":2010,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s2","name":"Bob","inst":"I2"}],"refs":["p1"],"fields":["CS"]}',
        '{"id":"p3","title":"Follow-up","year":2011,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s2","name":"Bob","inst":"I2"}],"refs":["p2"],"fields":["CS"]}',
        '{"id":"p4","title":"New direction","year":2012,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s3","name":"Carol","inst":"I1"}],"refs":["p1","p2"],"fields":["CS"]}',
    ]
)
GEO_TABLE = "I1\t41.0\t-71.5\nI2\t52.1\t13.4\n"
PORT = 8942


def q(params: dict) -> str:
    # mirrors URLSearchParams serialization (space -> '+', quote the rest)
    return urllib.parse.urlencode(params, quote_via=urllib.parse.quote_plus)


REQUESTS = [
    ("GET", "/healthz", None),
    ("GET", f"/scholars?{q({'q': 'alic', 'limit': 20})}", None),
    ("GET", f"/scholars?{q({'q': 'carol', 'limit': 20})}", None),
    ("GET", f"/scholars?{q({'q': chr(39).join(['Alice', 's advisor']), 'limit': 20})}", None),
    ("GET", f"/scholars?{q({'q': chr(39).join(['Bob', 's advisor']), 'limit': 20})}", None),
    ("GET", f"/scholars?{q({'q': 'zzz', 'limit': 20})}", None),
    ("GET", "/scholars/s1", None),
    ("GET", "/scholars/s2", None),
    ("GET", "/scholars/s1/ego?kind=coauthor", None),
    ("GET", "/scholars/s2/ego?kind=coauthor", None),
    ("GET", "/scholars/s1/ego?kind=advisor", None),
    ("GET", "/scholars/s1/ego?kind=coauthor&geo=true", None),
    ("GET", "/scholars/s1/ego?kind=coauthor&series=true", None),
    ("GET", f"/rankings/collaborators?{q({'offset': 0, 'limit': 20})}", None),
    ("GET", f"/rankings/citations?{q({'offset': 0, 'limit': 20})}", None),
    (
        "POST",
        "/recommend/advisor",
        {"field_tags": [], "min_advisees": 1, "min_citations": 0, "institution": None, "limit": 10},
    ),
]


def main() -> int:
    here = Path(__file__).resolve().parent.parent
    out_path = here / "tests" / "fixtures" / "fixtures.json"
    out_path.parent.mkdir(parents=True, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        (tmp_path / "corpus.jsonl").write_text(FIXTURE_CORPUS + "\n", encoding="utf-8")
        (tmp_path / "geo.tsv").write_text(GEO_TABLE, encoding="utf-8")
        snap = tmp_path / "f1.snap"
        run = lambda *args: subprocess.run(
            [sys.executable, "-m", "scholargraph.cli", *args], check=True, cwd=tmp
        )
        run("ingest", "--corpus", "corpus.jsonl", "--field", "CS", "--geo", "geo.tsv",
            "--snapshot", str(snap))
        run("mine", "--snapshot", str(snap))

        server = subprocess.Popen(
            [sys.executable, "-m", "scholargraph.cli", "serve", "--snapshot", str(snap),
             "--port", str(PORT)],
            cwd=tmp,
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            base = f"http://127.0.0.1:{PORT}"
            for _ in range(50):
                try:
                    urllib.request.urlopen(base + "/healthz", timeout=1)
                    break
                except (urllib.error.URLError, ConnectionError):
                    time.sleep(0.2)
            else:
                raise RuntimeError("server did not come up")

            fixtures = {}
            for method, path, body in REQUESTS:
                data = None
                headers = {}
                if body is not None:
                    data = json.dumps(body).encode("utf-8")
                    headers["content-type"] = "application/json"
                req = urllib.request.Request(base + path, data=data, headers=headers, method=method)
                with urllib.request.urlopen(req, timeout=5) as res:
                    fixtures[f"{method} {path}"] = {
                        "status": res.status,
                        "body": json.loads(res.read().decode("utf-8")),
                    }
            out_path.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n",
                                encoding="utf-8")
            print(f"recorded {len(fixtures)} responses -> {out_path}")
        finally:
            server.terminate()
            server.wait(timeout=10)
    return 0


if __name__ == "__main__":
    sys.exit(main())

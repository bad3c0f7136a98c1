import subprocess
import sys

import pytest

from quadreduce import (PROJECTIVE_PLANE, SPHERE, canonical_hash, face_contract,
                        gen_quadrangulation, parse_rsq)
from quadreduce.rsq import dump
from quadreduce.surgery import rename_vertices


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "quadreduce.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def sphere_file(tmp_path):
    G = gen_quadrangulation(SPHERE, 14, 5)
    p = tmp_path / "s.rsq"
    dump(G, p)
    return str(p), G


@pytest.fixture
def wheel_file(tmp_path):
    from quadreduce import odd_wheel_embedding
    W5 = odd_wheel_embedding(2)
    p = tmp_path / "w5.rsq"
    dump(W5, p)
    return str(p), W5


def test_validate_ok(sphere_file):
    path, G = sphere_file
    code, out, _ = run_cli("validate", path)
    assert code == 0
    assert out.strip() == (f"faces={len(G.faces)} euler=2 bipartite=true")


def test_validate_w5(wheel_file):
    path, _ = wheel_file
    code, out, _ = run_cli("validate", path)
    assert code == 0
    assert out.strip() == "faces=5 euler=1 bipartite=false"


def test_validate_invalid_exit_code(tmp_path):
    p = tmp_path / "c6.rsq"
    p.write_text("surface sphere\n0: 1/+ 5/+\n1: 0/+ 2/+\n2: 1/+ 3/+\n"
                 "3: 2/+ 4/+\n4: 3/+ 5/+\n5: 4/+ 0/+\n")
    code, out, _ = run_cli("validate", str(p))
    assert code == 1
    assert "violation" in out


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.rsq"
    p.write_text("surface sphere\n0: 1/+\n1: 0/-\n")
    code, out, _ = run_cli("validate", str(p))
    assert code == 2
    assert "parse error" in out


def test_generate_deterministic():
    a = run_cli("generate", "--surface", "sphere", "--n", "10", "--seed", "3")
    b = run_cli("generate", "--surface", "sphere", "--n", "10", "--seed", "3")
    assert a == b
    assert a[0] == 0
    G = parse_rsq(a[1])
    assert G.n_vertices == 10


def test_reduce_trace_format(sphere_file):
    path, _ = sphere_file
    code, out, _ = run_cli("reduce", path)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "terminal four_cycle"
    for i, line in enumerate(lines[:-1], start=1):
        assert line.startswith(f"step {i} ")
        assert "before=" in line and "after=" in line


def test_reduce_wheel(wheel_file):
    path, _ = wheel_file
    code, out, _ = run_cli("reduce", path)
    assert code == 0
    assert out.strip().splitlines()[-1] == "terminal odd_wheel k=5"


def test_emitted_face_contractions_replay_to_terminal_hash(tmp_path):
    G = gen_quadrangulation(SPHERE, 12, 9)
    p = tmp_path / "g.rsq"
    dump(G, p)
    code, out, _ = run_cli("reduce", str(p), "--emit-face-contractions")
    assert code == 0
    lines = out.strip().splitlines()
    H = G
    terminal_hash = None
    for line in lines:
        toks = line.split()
        if toks[0] == "step":
            terminal_hash = toks[-1].split("=", 1)[1]
        elif toks[0] == "expand" and toks[1].endswith(".relabel"):
            mapping = {}
            for pair in toks[2:]:
                a, b = pair.split("->")
                mapping[int(a)] = int(b)
            H = rename_vertices(H, mapping)
        elif toks[0] == "expand":
            pivot = tuple(int(x) for x in toks[3].split("=", 1)[1].split(","))
            face = tuple(int(x) for x in toks[4].split("=", 1)[1].split(","))
            H = face_contract(H, face, pivot)
    assert canonical_hash(H) == terminal_hash
    assert H.n_vertices == 4


def test_check_tperfect_wheel(wheel_file):
    path, _ = wheel_file
    code, out, _ = run_cli("check-tperfect", path, "--cross-validate")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "verdict=not_t_perfect"
    assert any(l.startswith("witness wheel k=5") and "=1/3" in l for l in lines)
    assert "cross_validate=agree" in lines


def test_check_tperfect_bipartite(tmp_path):
    G = gen_quadrangulation(PROJECTIVE_PLANE, 10, 2)
    p = tmp_path / "b.rsq"
    dump(G, p)
    code, out, _ = run_cli("check-tperfect", str(p), "--cross-validate")
    assert code == 0
    assert out.strip().splitlines()[0] == "verdict=t_perfect"


def test_export_dot(sphere_file):
    path, G = sphere_file
    code, out, _ = run_cli("export", path, "--format", "dot")
    assert code == 0
    assert out.startswith("graph G {")
    assert out.count(" -- ") == G.n_edges


def test_export_svg_dotted_circle(wheel_file):
    path, _ = wheel_file
    code, out, _ = run_cli("export", path, "--format", "svg")
    assert code == 0
    assert out.count("stroke-dasharray") == 1
    assert "<svg" in out


def test_export_byte_identical(wheel_file):
    path, _ = wheel_file
    a = run_cli("export", path, "--format", "svg")
    b = run_cli("export", path, "--format", "svg")
    assert a == b


def test_multiple_files_and_jobs(tmp_path):
    paths = []
    for seed in range(3):
        G = gen_quadrangulation(SPHERE, 8, seed)
        p = tmp_path / f"m{seed}.rsq"
        dump(G, p)
        paths.append(str(p))
    seq = run_cli("validate", *paths)
    par = run_cli("validate", *paths, "--jobs", "2")
    assert seq == par
    assert seq[0] == 0
    assert all(f"== {p} ==" in seq[1] for p in paths)

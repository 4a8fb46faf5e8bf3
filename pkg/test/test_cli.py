import json

import pytest

from rcsplit.ambient import DivisorClass
from rcsplit.cli import main, parse_ambient, parse_curve, parse_degrees
from rcsplit.errors import UsageError
from rcsplit.exact import field

F = field(32003)


def test_mini_languages():
    flag = parse_ambient('flag:1,2;3', F)
    assert flag.kind == 'flag' and flag.dim == 3
    assert parse_ambient('grassmannian:2,4', F).kind == 'grassmannian'
    assert parse_ambient('wps:1,1,1,2;2', F).block_sizes == (7,)
    product = parse_ambient('product:1,2', F)
    assert parse_degrees('3x4,2x2', product) == [DivisorClass([3, 4]), DivisorClass([2, 2])]
    assert parse_degrees('3,3', parse_ambient('projective:4', F)) == [DivisorClass([3])] * 2
    assert parse_curve('rnc:3', parse_ambient('projective:5', F), F).label == 'rnc:3,5'
    assert parse_curve('wps', parse_ambient('wps:1,1,1,2;2', F), F).h_degree == 6
    with pytest.raises(UsageError):
        parse_ambient('torus:3', F)
    with pytest.raises(UsageError):
        parse_curve('line', None, F)


def test_splitting_command(capsys):
    assert main(['splitting', '--source', '0,2,2', '--target', '2', '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['kernel'] == [0, 2]
    assert report['predicates']['globally_generated']


def test_text_output(capsys):
    assert main(['normal-bundle', '--ambient', 'projective:3', '--curve', 'rnc:3']) == 0
    out = capsys.readouterr().out
    assert 'tangent: [4,4,4]' in out
    assert 'normal: [5,5]' in out


def test_rathmann_command(capsys, tmp_path):
    path = tmp_path / 'report.json'
    assert main(['rathmann', '3', '4', '1', '--char', '0', '--out', str(path)]) == 0
    report = json.loads(path.read_text())
    assert report['surjective']
    assert (report['source_dim'], report['target_dim']) == (16, 11)


def test_charp_command(capsys):
    assert main(['charp-demo', '3', '--samples', '2', '--json']) == 0
    assert json.loads(capsys.readouterr().out)['formula_mismatch']


def test_usage_errors(capsys):
    assert main(['normal-bundle', '--ambient', 'torus:3']) == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error['code'] == 'usage'
    assert error['context']['ambient'] == 'torus:3'
    assert main(['rathmann', '3', '3', '1', '--char', '4']) == 2
    assert main(['splitting', '--source', '0', '--target', '1', '--trials', '0']) == 2
    capsys.readouterr()
    assert main(['no-such-command', '--json']) == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error['code'] == 'usage'
    assert 'usage' in error['context']
    assert main(['rathmann', '3', 'four', '1']) == 2
    assert main(['splitting', '--source', '0,2,2']) == 2


def test_verify_paper_subset(capsys):
    assert main(['verify-paper', '--only', 'rnc_conormal', '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['pass']
    assert [row['reference'] for row in report['rows']] == ['rnc-conormal']
    assert main(['verify-paper', '--only', 'nothing']) == 2


def test_json_is_reproducible(capsys):
    outputs = []
    for _ in range(2):
        assert main(['normal-bundle', '--ambient', 'projective:4', '--curve', 'rnc:4',
                     '--seed', '11', '--json']) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])['normal'] == [6, 6, 6]


def test_src_certify_exit_status(capsys):
    assert main(['src-certify', '--ambient', 'grassmannian:2,4', '--degrees', '3',
                 '--seed', '7', '--trials', '3', '--json']) == 0
    assert json.loads(capsys.readouterr().out)['flags']['very_free']
    assert main(['src-certify', '--ambient', 'grassmannian:2,5', '--degrees', '3,3',
                 '--seed', '7', '--trials', '2', '--json']) == 1
    report = json.loads(capsys.readouterr().out)
    assert not report['gate']['pass']
    assert not report['flags']['very_free']

import pytest

from pyhopf.config import LabConfigParser, parse_families
from pyhopf.errors import ConfigError

CONFIG = """
n = 5
p = 1
seed = 0x2a
witnesses = no
families = TypeA:1:4:0.75, TypeB:4
tol.eig_cluster_tol = 1e-6
tol.newton_max_iter = 30
"""


class TestLabConfigParser:

    def test_implicit_header(self):
        parser = LabConfigParser()
        parser.readText(CONFIG)
        assert parser.getInt('suite', 'n', None) == 5
        assert parser.getInt('suite', 'seed', None) == 42
        assert parser.getBool('suite', 'witnesses', True) is False
        assert parser.getInt('suite', 'samples', 10) == 10

    def test_explicit_header(self):
        parser = LabConfigParser()
        parser.readText("[suite]\nsamples = 3\n")
        assert parser.getInt('suite', 'samples', None) == 3

    def test_tolerances(self):
        parser = LabConfigParser()
        parser.readText(CONFIG)
        tols = parser.getTolerances()
        assert tols == {'eig_cluster_tol': 1e-6, 'newton_max_iter': 30}
        assert isinstance(tols['newton_max_iter'], int)

    def test_no_section(self):
        assert LabConfigParser().getTolerances() == {}
        assert LabConfigParser().getFloat('suite', 'h', None) is None

    def test_bad_value(self):
        parser = LabConfigParser()
        parser.readText("samples = many\n")
        with pytest.raises(ConfigError) as e:
            parser.getInt('suite', 'samples', None)
        assert 'samples' in str(e.value)

    def test_read_file(self, tmp_path):
        f = tmp_path / 'suite.cfg'
        f.write_text(CONFIG)
        parser = LabConfigParser()
        assert parser.readAllLocations(str(f)) == str(f)
        assert parser.getInt('suite', 'p', None) == 1

    def test_missing_file(self, tmp_path):
        parser = LabConfigParser()
        with pytest.raises(ConfigError):
            parser.readFile(str(tmp_path / 'none.cfg'))
        assert parser.readAllLocations('no-such-pyhopf-config.cfg') is None


class TestParseFamilies:

    def test_all_families(self):
        out = parse_families("TypeA:1:4:0.75, typeb:4 , Horosphere:2, Degenerate")
        assert out == [('TypeA', {'q': 1, 'm': 4, 't': 0.75}),
                       ('TypeB', {'t': 4.0}),
                       ('Horosphere', {'t': 2.0}),
                       ('Degenerate', {})]

    def test_empty_items(self):
        assert parse_families("TypeB:0.5,,") == [('TypeB', {'t': 0.5})]

    @pytest.mark.parametrize('text', ['TypeA:1:4', 'TypeB', 'TypeB:x', 'TypeZ:1'])
    def test_bad_entries(self, text):
        with pytest.raises(ConfigError):
            parse_families(text)

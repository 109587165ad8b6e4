import json
import os
import shutil
import tempfile
import unittest

from fractions import Fraction

from chiralcoh.complexes.weil import weil_algebra
from chiralcoh.errors import ConfigError
from chiralcoh.files import CharacterSeriesDecoder, CharacterSeriesEncoder, CohomologyEntry, CohomologyTable, \
    CohomologyTableDecoder, CohomologyTableEncoder, FixedPointData, FixedPointDataDecoder, FixedPointDataEncoder, \
    decode_fraction, dump, encode_fraction, fixed_point_data, load_descriptor, series_frame
from chiralcoh.fock import State
from chiralcoh.lie import abelian
from chiralcoh.series import CharacterSeries


class EncoderDecoderTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.path_to_tmp_dir = tempfile.mkdtemp()
        algebra = weil_algebra(abelian(1))
        gamma = State.generator(algebra, "gamma{t'}")
        cls.table = CohomologyTable(complex='W(abelian1)', p_min=0, p_max=2, n_max=0, entries=[
            CohomologyEntry(p=0, n=0, dim=1, basic=1),
            CohomologyEntry(p=1, n=0, dim=0, basic=0),
            CohomologyEntry(p=2, n=0, dim=1, basic=1, representatives=[gamma])
        ])

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.path_to_tmp_dir)

    @staticmethod
    def test_fractions():
        assert encode_fraction(Fraction(3, 6)) == '1/2'
        assert encode_fraction(Fraction(-4, 2)) == '-2'
        assert decode_fraction('-1/3') == Fraction(-1, 3)
        assert decode_fraction(5) == 5

    def test_cohomology_table(self):
        encoded = CohomologyTableEncoder().default(self.table)
        assert encoded['trunc'] == [0, 2, 0]
        assert encoded['series'] == '1 + z^2 + O(z^3, q^1)'

        decoded = json.loads(dump(self.table, CohomologyTableEncoder), cls=CohomologyTableDecoder)
        assert isinstance(decoded, CohomologyTable)
        assert decoded.complex == 'W(abelian1)'
        assert decoded.dim(2, 0) == 1
        assert decoded.entries[2].representatives == ["1 * gamma{t'}"]
        assert decoded.entries[0].representatives is None
        assert decoded.character() == self.table.character()

    def test_table_csv(self):
        text = self.table.to_csv()
        assert text.splitlines()[0] == 'p,n,dim'
        assert text.splitlines()[3] == '2,0,1'

    @staticmethod
    def test_character_series():
        series = CharacterSeries.polynomial({(0, 0): 1, (2, 1): Fraction(1, 2)}, 4, 1)
        encoded = CharacterSeriesEncoder().default(series)
        assert encoded['coefficients'] == [[0, 0, '1'], [2, 1, '1/2']]

        decoded = json.loads(json.dumps(series, cls=CharacterSeriesEncoder), cls=CharacterSeriesDecoder)
        assert decoded == series

        frame = series_frame(series)
        assert list(frame.columns) == ['p', 'n', 'coefficient']
        assert list(frame['coefficient']) == ['1', '1/2']

    @staticmethod
    def test_fixed_point_data():
        data = FixedPointData(scenario='simple', p_max=6, n_max=1, groups=['sl2'], betti={'fixed': [1, 0, 1]})
        decoded = json.loads(json.dumps(data, cls=FixedPointDataEncoder), cls=FixedPointDataDecoder)
        assert decoded == data

    def test_fixed_point_data_errors(self):
        with self.assertRaises(ConfigError):
            fixed_point_data({'scenario': 'unknown'})
        with self.assertRaises(ConfigError):
            fixed_point_data({'scenario': 'simple', 'betti': {'fixed': ['x']}})
        with self.assertRaises(ConfigError):
            fixed_point_data([1, 2])

    def test_load_descriptor(self):
        path = os.path.join(self.path_to_tmp_dir, 'cp2.yaml')
        with open(path, 'w') as f:
            f.write('scenario: simple\ngroups: [circle]\nbetti:\n  fixed: [3]\n')

        data = fixed_point_data(load_descriptor(path))
        assert data.groups == ['circle']
        assert data.betti == {'fixed': [3]}
        assert data.p_max == 8

    def test_load_descriptor_errors(self):
        with self.assertRaises(ConfigError):
            load_descriptor(os.path.join(self.path_to_tmp_dir, 'missing.json'))

        path = os.path.join(self.path_to_tmp_dir, 'broken.yaml')
        with open(path, 'w') as f:
            f.write('scenario: [simple\n')
        with self.assertRaises(ConfigError):
            load_descriptor(path)

    def test_dump_to_file(self):
        path = os.path.join(self.path_to_tmp_dir, 'table.json')
        dump(self.table, CohomologyTableEncoder, path)
        with open(path, 'r') as f:
            assert json.load(f, cls=CohomologyTableDecoder).dim(0, 0) == 1


if __name__ == '__main__':
    unittest.main()

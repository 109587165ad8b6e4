# !/usr/bin/python
# coding=utf-8

import json
import os
import shutil
import sys
import tempfile
import unittest

from chiralcoh.cli import RunConfig, verify_window

CLI = f'{sys.executable} -m chiralcoh'


class CLIVerifyTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.path_to_tmp_dir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.path_to_tmp_dir)

    def test_verify_pinning(self):
        result = os.system(f'{CLI} verify --algebra abelian1 --suite pinning')
        assert result == 0

    def test_verify_json(self):
        result = os.system(f'{CLI} verify --algebra abelian1 --suite oracle --seed 3 --format json '
                           f'--dest {self.path_to_tmp_dir}')
        assert result == 0

        with open(os.path.join(self.path_to_tmp_dir, 'verification.json'), 'r') as f:
            reports = json.load(f)
        assert len(reports) == 1
        assert reports[0]['suite'] == 'oracle'
        assert reports[0]['seed'] == 3
        assert reports[0]['passed']
        assert all(check['passed'] for check in reports[0]['results'])

    def test_verify_window_flags(self):
        result = os.system(f'{CLI} verify --algebra abelian2 --suite d2 --pmax 8 --format json '
                           f'--dest {self.path_to_tmp_dir}')
        assert result == 0

        with open(os.path.join(self.path_to_tmp_dir, 'verification.json'), 'r') as f:
            reports = json.load(f)
        assert reports[0]['suite'] == 'd2'
        assert reports[0]['passed']

    def test_homotopy_without_representation(self):
        result = os.system(f'{CLI} verify --algebra sl2 --suite homotopy')
        assert os.WEXITSTATUS(result) == 2

    def test_unknown_suite(self):
        result = os.system(f'{CLI} verify --algebra abelian1 --suite fuzz')
        assert os.WEXITSTATUS(result) == 2

    def test_version(self):
        result = os.system(f'{CLI} --version')
        assert result == 0


class VerifyWindowTestCase(unittest.TestCase):

    @staticmethod
    def test_no_bounds_defer_to_suite_defaults():
        assert verify_window(RunConfig(command='verify', options={'p_min': None, 'p_max': None})) is None

    @staticmethod
    def test_missing_bounds_from_pinning_window():
        config = RunConfig(command='verify', p_max=8, options={'p_min': None, 'p_max': 8, 'n_max': None})
        assert verify_window(config) == (-6, 8, 3)


if __name__ == '__main__':
    unittest.main()

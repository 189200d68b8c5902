import pytest

from bnsl_data.generators import random_dag, random_discrete_bn
from bnsl_data.serializers import dump_network


@pytest.fixture
def network_file(tmp_path):
    path = tmp_path / "net6.json"
    bn = random_discrete_bn(random_dag(6, seed=1), 1, min_probability=0.05)
    dump_network(bn, path)
    return path

import io

import numpy as np
import pytest

from ifsel.utils import configs
from ifsel.utils.logging import TableLogger, format_value


@pytest.mark.parametrize(
    "value, expected",
    [
        (None, ""),
        (True, "1"),
        (np.bool_(False), "0"),
        (3, "3"),
        (815.0, "815"),
        (1.0 / 3.0, "0.333333"),
        (1719.6, "1719.6"),
        ("WLAN", "WLAN"),
    ],
)
def test_format_value(value, expected):
    assert format_value(value) == expected


def test_csv_table_flattens_dicts():
    f = io.StringIO()
    table = TableLogger(f)
    table.log("distance", 100.0)
    table.log("weight", {"UMTS": 0.5, "WLAN": 2.0})
    table.flush()
    table.close()
    assert f.getvalue() == "distance,weight_UMTS,weight_WLAN\n100,0.5,2\n"


def test_csv_table_header_only():
    f = io.StringIO()
    TableLogger(f, fieldnames=["time", "attached"]).close()
    assert f.getvalue() == "time,attached\n"


def test_table_rejects_unknown_column():
    table = TableLogger(io.StringIO(), fieldnames=["time"])
    table.log("distance", 1.0)
    with pytest.raises(KeyError):
        table.flush()


def test_pretty_table_aligns_columns():
    f = io.StringIO()
    table = TableLogger(f, fmt="pretty")
    for iface_id, weight in (("UMTS", 0.25), ("WLAN", 1.5)):
        table.log("id", iface_id)
        table.log("weight", weight)
        table.flush()
    table.close()
    assert f.getvalue().splitlines() == [
        "  id  weight",
        "UMTS    0.25",
        "WLAN     1.5",
    ]


def test_factory_merges_kwargs():
    class Scaled:
        def __init__(self, factor=1.0, offset=0.0):
            self.factor = factor
            self.offset = offset

    factory = configs.Factory(
        {"model": "Scaled", "model_kwargs": {"factor": 2.0}}, "model", {"scaled": Scaled}
    )
    instance = factory(offset=1.0)
    assert (instance.factor, instance.offset) == (2.0, 1.0)
    assert factory.cls is Scaled

    with pytest.raises(KeyError):
        configs.Factory({}, "model", {"scaled": Scaled})
    with pytest.raises(KeyError):
        configs.get_class("other", {"scaled": Scaled})


def test_load_config_directory(tmp_path):
    (tmp_path / "config.yaml").write_text("scorer: saw\n")
    assert configs.load_config(tmp_path) == {"scorer": "saw"}
    assert configs.dump_config({"b": 1, "a": 2}) == "b: 1\na: 2\n"

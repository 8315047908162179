"""
實驗輸出測試
"""

import pytest

from npqc.circuit import Variant
from npqc.exceptions import NPQCConfigurationError
from npqc.output import (
    array_hash,
    canonical_json,
    data_lines,
    format_cell,
    read_header,
    read_rows,
    write_csv,
)


class TestCanonicalJson:
    """標準化 JSON 測試"""

    def test_sorted_and_compact(self):
        """測試鍵排序且無多餘空白"""
        assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'

    def test_enum_values(self):
        """測試列舉輸出其值"""
        assert canonical_json({"variant": Variant.Y_ONLY}) == '{"variant":"y_only"}'

    def test_nan_rejected(self):
        """測試不接受 NaN"""
        with pytest.raises(ValueError):
            canonical_json({"x": float("nan")})


class TestFormatCell:
    """欄位格式測試"""

    def test_values(self):
        """測試各型別的輸出"""
        assert format_cell(True) == "true"
        assert format_cell(None) == ""
        assert format_cell(0.1) == "0.10000000000000001"
        assert format_cell(3) == "3"
        assert format_cell(Variant.FULL) == "full"

    def test_float_round_trip(self):
        """測試 17 位有效數字可還原原值"""
        value = 1 / 3

        assert float(format_cell(value)) == value


class TestCsv:
    """CSV 讀寫測試"""

    def test_header_round_trip(self, tmp_path):
        """測試標頭與資料列讀回"""
        path = write_csv(
            tmp_path / "nested" / "out.csv",
            {"command": "qfim", "config": {"seed": 3}},
            ["a", "b"],
            [[1, 0.5], [2, None]],
        )

        assert read_header(path) == {"command": "qfim", "config": {"seed": 3}}
        assert read_rows(path) == [{"a": "1", "b": "0.5"}, {"a": "2", "b": ""}]
        assert data_lines(path) == ["a,b", "1,0.5", "2,"]
        assert data_lines(path, skip_header=False)[0].startswith("# ")

    def test_missing_header(self, tmp_path):
        """測試沒有標頭行的檔案"""
        path = tmp_path / "plain.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")

        with pytest.raises(NPQCConfigurationError):
            read_header(path)

    def test_malformed_header(self, tmp_path):
        """測試標頭不是 JSON"""
        path = tmp_path / "broken.csv"
        path.write_text("# {not json\n", encoding="utf-8")

        with pytest.raises(NPQCConfigurationError):
            read_header(path)


class TestArrayHash:
    """陣列雜湊測試"""

    def test_deterministic(self):
        """測試相同內容得到相同雜湊"""
        assert array_hash([1.0, 2.0]) == array_hash([1.0, 2.0])
        assert array_hash([1.0, 2.0]) != array_hash([2.0, 1.0])
        assert len(array_hash([0.0])) == 16

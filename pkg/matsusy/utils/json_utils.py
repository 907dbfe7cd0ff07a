"""JSON 工具"""

import json
import math
from typing import Any

import numpy as np


class JSONUtils:
    """JSON 工具类 - 报告序列化"""

    @staticmethod
    def sanitize(data: Any) -> Any:
        """把 numpy 标量/数组、复数与非有限浮点转换为 JSON 兼容结构"""
        if isinstance(data, dict):
            return {str(k): JSONUtils.sanitize(v) for k, v in data.items()}
        if isinstance(data, (list, tuple)):
            return [JSONUtils.sanitize(v) for v in data]
        if isinstance(data, np.ndarray):
            return JSONUtils.sanitize(data.tolist())
        if isinstance(data, (bool, np.bool_)):
            return bool(data)
        if isinstance(data, (int, np.integer)):
            return int(data)
        if isinstance(data, (complex, np.complexfloating)):
            z = complex(data)
            if z.imag == 0.0:
                return JSONUtils.sanitize(z.real)
            return {"re": JSONUtils.sanitize(z.real), "im": JSONUtils.sanitize(z.imag)}
        if isinstance(data, (float, np.floating)):
            x = float(data)
            if math.isfinite(x):
                return x
            return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return data

    @staticmethod
    def dumps(data: Any) -> str:
        """确定性输出：插入顺序、repr 浮点（最短往返表示）"""
        return json.dumps(JSONUtils.sanitize(data), ensure_ascii=False, indent=2)

    @staticmethod
    def format_float(value: float) -> str:
        """最短往返浮点格式"""
        return repr(float(value))

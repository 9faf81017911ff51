"""
Response Manager
响应管理器：把 CommandResult 序列化为 JSON / CSV / 文本，并生成可自定义的状态消息
"""

import csv
import io
import json
from typing import Any, Dict, Optional

from ..core.exceptions import CommandException
from ..core.models import CommandResult
from .template_renderer import ITemplateRenderer, Jinja2TemplateRenderer

FORMATS = ("json", "csv", "text")


class ResponseManager:
    """响应管理器 - 处理输出文档与自定义状态消息"""

    def __init__(self, config: Dict[str, Any], renderer: Optional[ITemplateRenderer] = None):
        self.config = config
        self._response_config = self.config.get("ui_preferences", {}).get("custom_responses", {})
        self.indent = self.config.get("output", {}).get("indent", 2)
        self.renderer = renderer or Jinja2TemplateRenderer(config)

    def get_response(self, response_type: str, **kwargs) -> Optional[str]:
        """
        获取自定义状态消息

        :param response_type: 消息类型
        :param kwargs: 用于占位符替换的参数
        :return: 格式化后的消息；模板为空时返回 None（不输出）
        """
        template = self._response_config.get(response_type)
        if not template or not template.strip():
            return None
        try:
            return template.format(**kwargs)
        except (KeyError, ValueError, IndexError):
            return template

    def verification_passed(self, subject: str, checked: int) -> Optional[str]:
        return self.get_response("verification_passed", subject=subject, checked=checked)

    def verification_failed(self, subject: str) -> Optional[str]:
        return self.get_response("verification_failed", subject=subject)

    def oracle_skipped(self, n: int, limit: int) -> Optional[str]:
        return self.get_response("oracle_skipped", n=n, limit=limit)

    def selftest_summary(self, passed: int, total: int) -> Optional[str]:
        return self.get_response("selftest_summary", passed=passed, total=total)

    def status_message(self, result: CommandResult) -> Optional[str]:
        """整体验证结果对应的状态消息"""
        subject = result.query.get("command", "")
        failure = result.first_failure
        if failure is not None:
            return self.verification_failed(failure.get("subject") or failure.get("crosscheck") or subject)
        checked = sum(report.checked for report in result.reports)
        return self.verification_passed(subject, checked)

    # -- 输出文档 -----------------------------------------------------------

    def to_json(self, result: CommandResult) -> str:
        """有序键、固定缩进：相同调用得到逐字节相同的输出。"""
        return json.dumps(result.to_json(), sort_keys=True, indent=self.indent, ensure_ascii=False) + "\n"

    @staticmethod
    def to_csv(result: CommandResult) -> str:
        if not result.columns:
            raise CommandException("csv output is only available for tables")
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=result.columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in result.result:
            writer.writerow({key: _cell(value) for key, value in row.items()})
        return buffer.getvalue()

    def to_text(self, result: CommandResult) -> str:
        crosschecks = [check.to_json() for check in result.crosschecks]
        if result.columns:
            rows = [{key: _cell(value) for key, value in row.items()} for row in result.result]
            return self.renderer.render('table', {'query': result.query, 'rows': rows, 'columns': result.columns})
        if result.reports:
            return self.renderer.render('report', {'query': result.query,
                                                   'reports': [r.to_json() for r in result.reports],
                                                   'crosschecks': crosschecks})
        return self.renderer.render('value', {'query': result.query, 'result': result.result,
                                              'crosschecks': crosschecks})

    def render(self, result: CommandResult, output_format: str) -> str:
        if output_format == "json":
            return self.to_json(result)
        if output_format == "csv":
            return self.to_csv(result)
        if output_format == "text":
            return self.to_text(result)
        raise CommandException(f"unknown output format {output_format!r}; expected one of {FORMATS}")


def _cell(value: Any) -> Any:
    """表格单元：分拆等列表写成逗号分隔的字符串"""
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return value

"""
Template rendering utilities
文本报告渲染工具，采用模板方法模式
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

from jinja2 import DictLoader, Environment, StrictUndefined


class ITemplateRenderer(ABC):
    """模板渲染器接口"""

    @abstractmethod
    def render(self, template_name: str, data: Dict[str, Any]) -> str:
        """渲染模板"""
        pass


class Jinja2TemplateRenderer(ITemplateRenderer):
    """Jinja2 模板渲染器实现（--format text 使用）"""

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or {}
        self.templates = {
            'value': self._get_value_template(),
            'table': self._get_table_template(),
            'report': self._get_report_template(),
        }
        self._load_custom_templates()
        self.env = Environment(loader=DictLoader(self.templates), undefined=StrictUndefined,
                               keep_trailing_newline=True, trim_blocks=True, lstrip_blocks=True)

    def _load_custom_templates(self):
        """加载自定义模板"""
        custom_config = self.config.get("ui_preferences", {}).get("custom_templates", {})
        if custom_config.get("enable_custom", False):
            if custom_config.get("value_template"):
                self.templates['value'] = custom_config["value_template"]
            if custom_config.get("table_template"):
                self.templates['table'] = custom_config["table_template"]
            if custom_config.get("report_template"):
                self.templates['report'] = custom_config["report_template"]

    @staticmethod
    def _get_value_template() -> str:
        return '''{{ query.command }}{% for key, value in query|dictsort %}{% if key != "command" %} {{ key }}={{ value }}{% endif %}{% endfor %}

= {{ result }}
{% for check in crosschecks %}
  [{{ "ok" if check.agrees else "MISMATCH" }}] {{ check.method }}{% if check.value %} ({{ check.value }}){% endif %}

{% endfor %}
'''

    @staticmethod
    def _get_table_template() -> str:
        return '''{{ columns|join("\t") }}
{% for row in rows %}
{% for column in columns %}{{ row[column] }}{% if not loop.last %}{{ "\t" }}{% endif %}{% endfor %}

{% endfor %}
'''

    @staticmethod
    def _get_report_template() -> str:
        return '''{% for report in reports %}
{{ report.subject }}: {{ report.status }} (N={{ report.N }}, {{ report.checked }} coefficients)
{% if report.first_failure %}
  first failure: {{ report.first_failure }}
{% endif %}
{% endfor %}
{% for check in crosschecks %}
  [{{ "ok" if check.agrees else "MISMATCH" }}] {{ check.method }}
{% endfor %}
'''

    def render(self, template_name: str, data: Dict[str, Any]) -> str:
        """渲染模板"""
        template = self.env.get_template(template_name)
        return template.render(**data)

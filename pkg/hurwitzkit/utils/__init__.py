"""
Utils package
"""

from .config import load_config, schema_defaults, deep_merge
from .logger import logger, configure_logging
from .response_manager import ResponseManager
from .template_renderer import ITemplateRenderer, Jinja2TemplateRenderer

__all__ = [
    'load_config', 'schema_defaults', 'deep_merge', 'logger', 'configure_logging',
    'ResponseManager', 'ITemplateRenderer', 'Jinja2TemplateRenderer'
]

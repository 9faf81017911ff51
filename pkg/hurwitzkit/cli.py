"""
Command line front end
argparse 前端：run(argv) 返回退出码
  0  成功 / 全部验证通过
  1  验证失败，第一个失败以 JSON 写到 stdout
  2  用法错误、资源超限、参数域错误或极点
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from .app import HurwitzKitApp
from .core.exceptions import (
    CommandException, DomainException, HurwitzKitException, PoleException, ResourceException
)
from .handlers.command_factory import CommandFactory
from .utils.config import load_config
from .utils.logger import configure_logging, logger
from .utils.response_manager import FORMATS

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file merged over _conf_schema.json defaults")
    common.add_argument("--format", choices=FORMATS, help="output format (default output.format)")
    common.add_argument("--output", help="write the result to this file instead of stdout")
    common.add_argument("--force", action="store_true", help="ignore the oracle enumeration limit")
    common.add_argument("--debug", action="store_true", help="DEBUG logging on stderr")
    return common


def build_parser(factory: CommandFactory) -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="hurwitzkit",
        description="Exact Hurwitz numbers, quantum curve and constraint verification.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for name in factory.list_commands():
        handler = factory.get_handler(name)
        subparser = subparsers.add_parser(name, parents=[common], help=handler.help, description=handler.help)
        handler.add_arguments(subparser)
    return parser


def _config_path(argv: List[str]) -> Optional[str]:
    preparser = argparse.ArgumentParser(add_help=False)
    preparser.add_argument("--config")
    known, _ = preparser.parse_known_args(argv)
    return known.config


def run(argv: Optional[List[str]] = None) -> int:
    """
    解析参数、校验、计算并输出。

    :param argv: 命令行参数（不含程序名），None 表示 sys.argv[1:]
    :return: 退出码
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = load_config(_config_path(argv))
    except CommandException as e:
        configure_logging()
        logger.error(f"usage error: {e}")
        return EXIT_ERROR
    configure_logging(config)

    app = HurwitzKitApp(config)
    parser = build_parser(app.command_factory)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_ERROR

    if args.debug:
        logger.setLevel(logging.DEBUG)
    if args.force:
        app.oracle.force = True
    args.format = args.format or config.get("output", {}).get("format", "json")
    handler = app.command_factory.get_handler(args.command)

    try:
        handler.validate(args)
        result = handler.handle(args)
        text = app.response_manager.render(result, args.format)
    except CommandException as e:
        logger.error(f"usage error: {e}")
        return EXIT_ERROR
    except ResourceException as e:
        logger.error(f"resource limit: {e}")
        return EXIT_ERROR
    except PoleException as e:
        logger.error(f"pole: {e}")
        return EXIT_ERROR
    except DomainException as e:
        logger.error(f"domain error: {e}")
        return EXIT_ERROR
    except HurwitzKitException as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR

    for message in result.messages:
        print(message, file=sys.stderr)
    status = app.response_manager.status_message(result)
    if status:
        print(status, file=sys.stderr)

    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as e:
            logger.error(f"cannot write {args.output}: {e}")
            return EXIT_ERROR
    else:
        sys.stdout.write(text)

    if not result.ok:
        if args.output or args.format != "json":
            sys.stdout.write(json.dumps(result.first_failure, sort_keys=True) + "\n")
        return EXIT_FAILED
    return EXIT_OK


def main():
    sys.exit(run())

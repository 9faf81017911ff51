"""
HurwitzKit Main - 程序主入口
本文件作为命令行的入口点：
1. 读取 _conf_schema.json 默认值与用户配置。
2. 由 HurwitzKitApp 装配所有计算组件（见 hurwitzkit/app.py）。
3. 把子命令分发到相应的命令处理器，并以退出码报告结果。

用法: python main.py <command> [options]，例如
    python main.py hurwitz --flavor monotone --mu 2,1 --nu 1,1,1 --b 2
    python main.py qcurve --flavor atlantes --r 2 --order 10
"""

from hurwitzkit.cli import main

if __name__ == "__main__":
    main()

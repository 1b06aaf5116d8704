# Reasoning Shortcut Counter
# 신경-기호 태스크의 RS / JRS 카운팅 도구

__version__ = "0.1.0"

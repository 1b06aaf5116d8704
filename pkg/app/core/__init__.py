# Core 모듈
# 환경 설정 및 예외 정의

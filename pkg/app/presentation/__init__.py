"""
프레젠테이션 계층 (Presentation Layer)
- 명령줄 인터페이스 및 리포트 스키마
"""

# Core Engine: application orchestration and exceptions

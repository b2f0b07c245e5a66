"""
Dependency injection container for the command-line front end
"""
from typing import Optional

from app.core.config import Settings
from app.services import BenchService, SolverService, VerificationService


class DIContainer:
    """Services wired from one settings object"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self._solver_service = SolverService(settings)
        self._verification_service = VerificationService(settings)
        self._bench_service = BenchService(settings)

    @property
    def solver_service(self) -> SolverService:
        return self._solver_service

    @property
    def verification_service(self) -> VerificationService:
        return self._verification_service

    @property
    def bench_service(self) -> BenchService:
        return self._bench_service


# Global container instance
_container: Optional[DIContainer] = None


def get_container() -> DIContainer:
    """Get the global dependency injection container"""
    if _container is None:
        raise RuntimeError("DI Container not initialized. Call init_container() first.")
    return _container


def init_container(settings: Settings) -> DIContainer:
    """Initialize the global dependency injection container"""
    global _container
    _container = DIContainer(settings)
    return _container

from enum import Enum
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseSettings

# Load environment variables from .env file
load_dotenv()


def get_version():
    """Get version from pyproject.toml

    NOTE:
        It's expected that the file is in the root of the project
        and this function is called from the src folder
    """
    root_path = Path(__file__).parent.parent
    pyproject_path = root_path / "pyproject.toml"
    with pyproject_path.open("r", encoding="utf-8") as f:
        for line in f:
            if line.startswith("version"):
                return line.split("=")[1].replace('"', "").strip()
    # If version is not found, return unknown
    return "unknown"


class ReportFormatEnum(str, Enum):
    text = "text"
    json = "json"


class Settings(BaseSettings):
    """nt-codes settings"""

    # Which environment this is running in ("dev", "ci", etc)
    environment: str = "dev"

    # Logging configurations:
    log_path: str = "logs/"
    log_backup_days: int = 14

    # Finite fields
    field_size_cap: int = 2**20
    log_table_cap: int = 2**16
    add_table_cap: int = 2**10

    # Code analysis caps
    codeword_cap: int = 2**24
    vertex_cap: int = 2**24
    exhaustive_transitivity_cap: int = 2**16
    # Rows of a codeword block handled by a single numpy call
    enumeration_block: int = 2**14

    # Deterministic sampling
    sample_seed: int = 0
    sample_size: int = 4096
    homogeneity_sample: int = 64

    # Concurrency
    max_workers: int = 1

    # Output
    output_dir: str = "output/"
    report_format: ReportFormatEnum = ReportFormatEnum.text

    # nt-codes version
    # This variable is read in the class initialization
    version: str

    class Config:
        env_file = ".env"


settings = Settings(version=get_version())

# app.py

"""Desktop entry point"""
import sys
from PySide6.QtWidgets import QApplication

from src.utils.log_utils import configure_logging
from src.views.MainWindow import MainWindow


def main():
    configure_logging()
    app = QApplication(sys.argv)
    window = MainWindow()
    window.show()
    sys.exit(app.exec())


if __name__ == "__main__":
    main()

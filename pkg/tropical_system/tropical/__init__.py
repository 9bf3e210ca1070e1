"""Тропическая (min-plus) выпуклость: точные предикаты, сертификаты и 2D оболочки."""

import argparse
import sys

from django.core.management.base import BaseCommand, CommandError

from tropical.cli import EXIT_NEGATIVE, EXIT_OK, run_command


class Command(BaseCommand):
    help = 'Тропическая выпуклость: hull, vertices, contains, tdet, render и др. Использование: trop hull --algo chan points.txt'

    def add_arguments(self, parser):
        parser.add_argument('args', nargs=argparse.REMAINDER, help='Подкоманда и её аргументы')

    def run_from_argv(self, argv):
        # manage.py trop ...: код выхода команды без обёртки CommandError
        sys.exit(run_command(argv[2:]))

    def handle(self, *args, **options):
        code = run_command(list(args), stdout=self.stdout, stderr=self.stderr)
        if code not in (EXIT_OK, EXIT_NEGATIVE):
            raise CommandError(f'trop {" ".join(args)} failed', returncode=code)

#!/usr/bin/env python
"""Exercises every action/nargs/choices shape the extractor understands."""

import argparse

DEFAULT_K = 7
METHODS = ['upgma', 'nj']

parser = argparse.ArgumentParser(description='Twelve declarations.', epilog='See the docs.')
io = parser.add_argument_group('IO', 'Files in and out')
io.add_argument('reads', metavar='FASTA', help='Input reads.')
io.add_argument('extra', nargs='*', help='Extra files.')
io.add_argument('-o', '--output-db', dest='output_db', metavar='PROFILE_DB_OUT', required=True,
                help='Output database.')
parser.add_argument('-k', '--kmer-size', type=int, default=DEFAULT_K, metavar='INT',
                    help='K (default %(default)s).')
parser.add_argument('--ratio', type=float, default=0.5)
parser.add_argument('--quiet', action='store_true', help='Less output.')
parser.add_argument('--no-cache', dest='cache', action='store_false')
parser.add_argument('-v', '--verbose', action='count', default=0)
parser.add_argument('--tag', action='append', help='Tag; repeatable.')
parser.add_argument('--method', choices=METHODS, default='upgma')
parser.add_argument('--pair', nargs=2, metavar='STRING')
parser.add_argument('--version', action='version', version='%(prog)s 2.0')

if __name__ == '__main__':
    args = parser.parse_args()

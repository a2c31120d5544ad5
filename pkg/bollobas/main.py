import logging

import click

from bollobas.commands import analysis, generate, proof, search
from bollobas.exceptions import BollobasError


class BollobasGroup(click.Group):
    """Turns a BollobasError into a one-line message and its exit code."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except BollobasError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exc.exit_code)


@click.group(cls=BollobasGroup)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for every fill-up step.")
def cli(verbose: int) -> None:
    """Exact verification, saturation and search for Bollobás-type systems."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")  # stderr


cli.add_command(analysis.verify_command)  # verify
cli.add_command(analysis.weight_command)  # weight
cli.add_command(proof.saturate_command)  # saturate, certify
cli.add_command(proof.certify_command)
cli.add_command(generate.construct_command)  # construct, embed, random
cli.add_command(generate.embed_command)
cli.add_command(generate.random_command)
cli.add_command(search.search_command)

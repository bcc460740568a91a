"""gearnet CLI — entry point registered as the `gearnet` console script."""

import typer

from gearnet.cli.commands.audit import app as audit_app
from gearnet.cli.commands.dump_features import app as dump_features_app
from gearnet.cli.commands.eval import app as eval_app
from gearnet.cli.commands.gradcheck import app as gradcheck_app
from gearnet.cli.commands.init import app as init_app
from gearnet.cli.commands.pretrain import app as pretrain_app
from gearnet.cli.commands.run import app as run_app
from gearnet.cli.commands.status import app as status_app
from gearnet.cli.commands.sweep import app as sweep_app
from gearnet.cli.commands.synth_data import app as synth_data_app
from gearnet.cli.commands.train import app as train_app
from gearnet.cli.commands.transfer_train import app as transfer_train_app

app = typer.Typer(
    name="gearnet",
    help="From-scratch CNN with layer-transplant transfer learning for gear fault diagnosis.",
    no_args_is_help=True,
)

app.add_typer(init_app, name="init", help="Write gearnet.yaml into the working directory")
app.add_typer(synth_data_app, name="synth-data", help="Generate a synthetic gearbox corpus")
app.add_typer(pretrain_app, name="pretrain", help="Pretrain the source network")
app.add_typer(train_app, name="train", help="Scratch-train the local CNN")
app.add_typer(transfer_train_app, name="transfer-train", help="Transplant and fine-tune")
app.add_typer(eval_app, name="eval", help="Evaluate a checkpoint on a corpus")
app.add_typer(sweep_app, name="sweep", help="Run the training-fraction sweep")
app.add_typer(run_app, name="run", help="Run the full protocol")
app.add_typer(gradcheck_app, name="gradcheck", help="Finite-difference gradient check")
app.add_typer(dump_features_app, name="dump-features", help="Dump convolution feature maps")
app.add_typer(status_app, name="status", help="Show recent runs")
app.add_typer(audit_app, name="audit", help="View the audit log")


if __name__ == "__main__":
    app()

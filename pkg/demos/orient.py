"""Synthesise certificates for the bundled problems and show why rev needs
parameter substitution."""

from popstar.analysis import analyze
from popstar.generators import corpus_trs
from popstar.orders import OrderContext, gpop, gpopps
from popstar.parsing import print_certificate
from popstar.terms import App, OrderKind, Var, render

for stem in ("mul", "sat", "dup", "dc", "rev", "bin", "times2a", "exp", "nc"):
    for order in (OrderKind.POP, OrderKind.POPPS):
        rep = analyze(stem, corpus_trs(stem), order)
        print(f"{stem:8} {order.value:10} {rep.verdict}")

trs = corpus_trs("rev")
rep = analyze("rev", trs, OrderKind.POPPS)
print("\ncertificate found for rev:")
print(print_certificate(rep.certificate))

ctx = OrderContext(trs, rep.certificate)
x, xs, ys = Var("x"), Var("xs"), Var("ys")
lhs = App("revt", [App("cons", [x, xs]), ys])
rhs = App("revt", [xs, App("cons", [x, ys])])
print(render(lhs), "->", render(rhs))
print("  POP*  :", gpop(lhs, rhs, ctx).result)
print("  POP*ps:", gpopps(lhs, rhs, ctx).result)

"""
Lark grammar of the identity language.

    identity prop-m1 {
        order 30;
        vars z, y;
        theta3(z+y|tau)*theta3(z-y|tau) - theta4(z+y|tau)*theta4(z-y|tau)
            == 2*theta2(2*y|2*tau)*theta2(2*z|2*tau)
    }

Expressions combine numbers, q, q^r, theta1..theta4(arg | tau), phi(+-q^r),
psi(+-q^r), poch(mono; q^r), f(mono, mono), e(arg) = e^(i arg) and
"sum k in lo..hi [sign (-1)^k]: factor". Arguments are affine in the
declared variables, pi, and pi*tau, with rational coefficients.
"""

GRAMMAR = r"""
start: identity*

expr_only: expr
arg_only: arg

identity: "identity" IDNAME "{" "order" rat ";" vars_decl? expr "==" expr "}"
vars_decl: "vars" NAME ("," NAME)* ";"

?expr: term
     | expr "+" term            -> add
     | expr "-" term            -> sub

?term: unary
     | term "*" unary           -> mul

?unary: power
      | "-" unary               -> neg
      | sumexpr

?power: base
      | base "^" exponent       -> pow

?base: number
     | NAME                     -> ref
     | "q"                      -> qvar
     | call
     | "(" expr ")"

number: INT
      | INT "/" INT

exponent: INT                   -> exp_int
        | "(" sint ")"          -> exp_rat

sint: INT                       -> sint_pos
    | "-" INT                   -> sint_neg
    | INT "/" INT               -> sint_frac
    | "-" INT "/" INT           -> sint_neg_frac

call: THETA "(" arg "|" arg ")"          -> theta
    | "phi" "(" sq ")"                   -> phi
    | "psi" "(" sq ")"                   -> psi
    | "poch" "(" mono ";" mono ")"       -> poch
    | "f" "(" mono "," mono ")"          -> fab
    | "e" "(" arg ")"                    -> expi

sq: "q" ("^" exponent)?                  -> sq_pos
  | "-" "q" ("^" exponent)?              -> sq_neg

mono: monoatom ("*" monoatom)*           -> mono_pos
    | "-" monoatom ("*" monoatom)*       -> mono_neg

monoatom: INT                            -> matom_int
        | "q" ("^" exponent)?            -> matom_q
        | "e" "(" arg ")"                -> matom_e

sumexpr: "sum" NAME "in" bound ".." bound sign? ":" power
sign: "sign" "(-1)^" NAME
bound: INT                               -> bound_pos
     | "-" INT                           -> bound_neg
     | "(" arg ")"                       -> bound_arg

?arg: aterm
    | arg "+" aterm                      -> aadd
    | arg "-" aterm                      -> asub

?aterm: afactor
      | aterm "*" afactor                -> amul
      | aterm "/" INT                    -> adiv

?afactor: INT                            -> anum
        | NAME                           -> asym
        | "pi"                           -> api
        | "tau"                          -> atau
        | "-" afactor                    -> aneg
        | "(" arg ")"

rat: INT
   | INT "/" INT

THETA.2: /theta[1-4](?![A-Za-z0-9_])/
IDNAME: /[A-Za-z0-9_][A-Za-z0-9_\-]*/
COMMENT: /#[^\n]*/

%import common.CNAME -> NAME
%import common.INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

# Words that cannot name a variable or sum index.
RESERVED = frozenset(
    {"identity", "order", "vars", "q", "pi", "tau", "phi", "psi", "poch", "f", "e", "sum", "in", "sign",
     "theta1", "theta2", "theta3", "theta4"}
)

# Names a NAME token may carry right before "(" in a valid program.
FUNCTIONS = frozenset({"theta1", "theta2", "theta3", "theta4", "phi", "psi", "poch", "f", "e"})

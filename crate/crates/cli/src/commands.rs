use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};
use std::fs;

use bfinv_core::bredon::{
    bredon_cohomology, forgetful_image, shift_virtual, stable_suspension, suspension_families_hold, top_complex, Action,
    CoefficientModule, Coefficients, EquivariantChainComplex, RepMultiplicities,
};
use bfinv_core::indexthy::{
    admissible_eps_sums, equivariant_indices, fixed_point_count, smooth_required_eps, spin_index, Route, SpinIndices,
};
use bfinv_core::lattice::{
    b_plus_fixed, check_involution, classify_indefinite_even, ee_conditions, eigenlattice_ranks, form_properties,
    g_signature, inertia, integral_decomposition, tate_dims,
};
use bfinv_core::realization::{eps_achievable, ee_matrix_check};
use bfinv_core::vanishing::{bf_vanishing_even, bf_vanishing_odd, nonsmoothability, VanishingVerdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::Source;
use crate::{ActionArg, BredonCmd, Cli, CoeffArg, Command, EeCmd, FormCmd, InvolutionCmd, RepArgs, RouteArg, VanishingCmd};

pub struct Output {
    pub value: Value,
    pub text: String,
}

impl Output {
    /// Pretty JSON with keys in sorted order.
    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("JSON values always serialize")
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn fmt_set(s: &BTreeSet<i64>) -> String {
    let items: Vec<String> = s.iter().map(i64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn route(r: RouteArg) -> Route {
    match r {
        RouteArg::EvenK => Route::EvenK,
        RouteArg::Gauge => Route::Gauge,
    }
}

pub fn run(cli: &Cli) -> Result<Output, String> {
    let g = &cli.global;
    match &cli.command {
        Command::Form(FormCmd::Check) => form_check(&g.source()?),
        Command::Form(FormCmd::Classify) => form_classify(&g.source()?),
        Command::Involution(InvolutionCmd::Analyze) => involution_analyze(&g.source()?),
        Command::Ee(EeCmd::Check) => ee_check(&g.source()?),
        Command::Index => index(&g.source()?, g.require_even_k, g.route, g.bf_nonvanishing),
        Command::Bredon(BredonCmd::Top(rep)) => bredon_top(rep),
        Command::Bredon(BredonCmd::Cohomology { rep, complex, degree, coeff, action, forgetful }) => {
            let c = match complex {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    serde_json::from_str(&text).map_err(|e| format!("malformed complex {}: {e}", path.display()))?
                }
                None => top_complex(&multiplicities(rep)?).map_err(err)?,
            };
            bredon_cohomology_cmd(&c, *degree, *coeff, *action, *forgetful)
        }
        Command::Bredon(BredonCmd::Suspension(rep)) => bredon_suspension(rep),
        Command::Vanishing(VanishingCmd::Check { k_plus, k_minus, eps_sum, odd }) => {
            let source = g.source()?;
            let profile = source.profile()?;
            let (kp, km) = match (k_plus, k_minus) {
                (Some(a), Some(b)) => (*a, *b),
                _ => {
                    let k = equivariant_indices(profile.sign, eps_sum.unwrap_or(0)).map_err(err)?;
                    (k.k_plus, k.k_minus)
                }
            };
            let v = if *odd {
                bf_vanishing_odd(profile, &SpinIndices::odd(kp, km))
            } else {
                bf_vanishing_even(profile, &SpinIndices::even(kp, km))
            };
            Ok(vanishing_output(&source.name, &v))
        }
        Command::Verdict => {
            let r = g.route.ok_or("verdict needs --route even-k|gauge")?;
            verdict(&g.source()?, route(r), g.bf_nonvanishing)
        }
    }
}

fn form_check(s: &Source) -> Result<Output, String> {
    let l = s.lattice()?;
    let props = form_properties(l).map_err(err)?;
    let ine = inertia(l.gram());
    let value = json!({
        "command": "form check",
        "source": s.name,
        "rank": l.rank(),
        "properties": to_value(&props),
        "inertia": to_value(&ine),
    });
    let text = format!(
        "{}: rank {}\n  even: {}\n  unimodular: {}\n  inertia (+, -, 0): ({}, {}, {})\n  signature: {}\n  indefinite: {}\n",
        s.name, l.rank(), props.even, props.unimodular, ine.positive, ine.negative, ine.zero, props.signature, props.indefinite
    );
    Ok(Output { value, text })
}

fn form_classify(s: &Source) -> Result<Output, String> {
    let l = s.lattice()?;
    let c = classify_indefinite_even(l).map_err(err)?;
    let e8 = if c.positive_orientation { "(-E8)" } else { "E8" };
    let value = json!({
        "command": "form classify",
        "source": s.name,
        "classification": to_value(&c),
    });
    let text = format!("{}: {}·{} ⊕ {}·H\n(p, q) = ({}, {})\n", s.name, c.e8, e8, c.hyperbolic, c.e8, c.hyperbolic);
    Ok(Output { value, text })
}

fn involution_analyze(s: &Source) -> Result<Output, String> {
    let l = s.lattice()?;
    let g = s.involution()?;
    if !check_involution(l, &g).map_err(err)? {
        return Err(format!("{}: the action is not an isometric involution of the form", s.name));
    }
    let ranks = eigenlattice_ranks(l, &g).map_err(err)?;
    let tate = tate_dims(l, &g).map_err(err)?;
    let dec = integral_decomposition(l, &g).map_err(err)?;
    let gsig = g_signature(l, &g).map_err(err)?;
    let bpf = b_plus_fixed(l, &g).map_err(err)?;
    let value = json!({
        "command": "involution analyze",
        "source": s.name,
        "eigenranks": to_value(&ranks),
        "tate": to_value(&tate),
        "decomposition": to_value(&dec),
        "g_signature": gsig,
        "b_plus_fixed": bpf,
    });
    let text = format!(
        "{}: involution on a rank {} form\n  eigenlattice ranks (+1, -1): ({}, {})\n  Tate dims (H^0, H^1): ({}, {})\n  \
         decomposition: {}·Z ⊕ {}·Z_- ⊕ {}·Z[Z2]\n  g-signature: {}\n  b+ of fixed part: {}\n",
        s.name,
        l.rank(),
        ranks.plus,
        ranks.minus,
        tate.h0,
        tate.h1,
        dec.trivial,
        dec.sign,
        dec.free,
        gsig,
        bpf
    );
    Ok(Output { value, text })
}

fn ee_check(s: &Source) -> Result<Output, String> {
    let l = s.lattice()?;
    let g = s.involution()?;
    let ee = ee_conditions(l, &g).map_err(err)?;
    let mut value = json!({
        "command": "ee check",
        "source": s.name,
        "ee": to_value(&ee),
        "all": ee.all(),
    });
    let mut text = format!(
        "{}: no sign summands: {}\n  even on (v, gv): {}\n  g-signature zero: {} (g-signature {})\n  trivial summands: {}\n  \
         all conditions: {}\n",
        s.name,
        ee.cond1,
        ee.cond2,
        ee.cond3,
        ee.g_sig,
        ee.n_trivial,
        ee.all()
    );
    if let Some(link) = &s.link {
        let ok = ee_matrix_check(link);
        value["link_ee"] = json!(ok);
        let _ = writeln!(text, "  link matrix (even framings, odd linking): {ok}");
    }
    Ok(Output { value, text })
}

fn index(s: &Source, require_even_k: bool, route_arg: Option<RouteArg>, bf_nonvanishing: bool) -> Result<Output, String> {
    let p = s.profile()?;
    let ind = spin_index(p.sign).map_err(err)?;
    let m = fixed_point_count(p).map_err(err)?;
    let admissible = admissible_eps_sums(p, m, require_even_k).map_err(err)?;
    let mut candidates = Vec::new();
    let mut text = format!(
        "{}: chi {}, sign {}, b+ {}, b+ fixed {}\n  spin index: {}\n  fixed points m: {}\n  admissible sums{}: {}\n",
        s.name,
        p.chi,
        p.sign,
        p.b_plus,
        p.b_plus_fixed,
        ind,
        m,
        if require_even_k { " (even k)" } else { "" },
        fmt_set(&admissible)
    );
    for &e in &admissible {
        let k = equivariant_indices(p.sign, e).map_err(err)?;
        let _ = writeln!(text, "    sum {e}: k = ({}, {})", k.k_plus, k.k_minus);
        candidates.push(json!({"eps_sum": e, "indices": to_value(&k)}));
    }
    let mut value = json!({
        "command": "index",
        "source": s.name,
        "profile": to_value(p),
        "spin_index": ind,
        "m": m,
        "require_even_k": require_even_k,
        "admissible": to_value(&admissible),
        "candidates": candidates,
    });
    if let Some(r) = route_arg {
        let required = smooth_required_eps(p, m, bf_nonvanishing, route(r)).map_err(err)?;
        let _ = writeln!(text, "  required by smoothness: {}", fmt_set(&required));
        value["route"] = to_value(&route(r));
        value["required"] = to_value(&required);
    }
    Ok(Output { value, text })
}

fn multiplicities(rep: &RepArgs) -> Result<RepMultiplicities, String> {
    let a = |x: i64, name: &str| u64::try_from(x).map_err(|_| format!("--{name} must be nonnegative here"));
    Ok(RepMultiplicities::new(a(rep.a_plus, "aplus")?, a(rep.a_minus, "aminus")?, rep.b_plus, rep.b_minus))
}

fn bredon_top(rep: &RepArgs) -> Result<Output, String> {
    let v = multiplicities(rep)?;
    let c = top_complex(&v).map_err(err)?;
    let value = json!({
        "command": "bredon top",
        "v": to_value(&v),
        "complex": to_value(&c),
    });
    let mut text = format!("V = {v}\n  top degree n = {}\n", c.top_degree());
    for k in c.lo()..=c.hi() {
        let derived = if c.derived_degrees().contains(&k) { " (boundary derived)" } else { "" };
        let _ = writeln!(text, "  degree {k}: {} free orbit cell(s){derived}", c.rank(k));
    }
    Ok(Output { value, text })
}

fn bredon_cohomology_cmd(
    c: &EquivariantChainComplex,
    degree: Option<i64>,
    coeff: CoeffArg,
    action: ActionArg,
    forgetful: bool,
) -> Result<Output, String> {
    let underlying = match coeff {
        CoeffArg::Z => Coefficients::Integers,
        CoeffArg::Z2 => Coefficients::Mod2,
    };
    let action = match action {
        ActionArg::Trivial => Action::Trivial,
        ActionArg::Sign => Action::Sign,
    };
    let m = CoefficientModule::new(underlying, action);
    let k = degree.unwrap_or(c.top_degree() - 1);
    let h = bredon_cohomology(c, &m, k).map_err(err)?;
    let mut value = json!({
        "command": "bredon cohomology",
        "degree": k,
        "coefficients": to_value(&m),
        "group": to_value(&h),
    });
    let mut text = format!("H^{k}(coefficients {m}) = {h}\n");
    if forgetful {
        let img = forgetful_image(c, &m, k).map_err(err)?;
        let _ = writeln!(text, "forgetful image = {img}");
        value["forgetful_image"] = to_value(&img);
    }
    Ok(Output { value, text })
}

fn bredon_suspension(rep: &RepArgs) -> Result<Output, String> {
    let w0 = RepMultiplicities::new(0, 0, rep.b_plus, rep.b_minus);
    let vp = stable_suspension(rep.a_plus, rep.a_minus, &w0).map_err(err)?;
    let (v0, w0) = shift_virtual(rep.a_plus, rep.a_minus, &w0);
    let holds = suspension_families_hold(&vp, &v0, &w0);
    let value = json!({
        "command": "bredon suspension",
        "k_plus": rep.a_plus,
        "k_minus": rep.a_minus,
        "v_prime": to_value(&vp),
        "v0": to_value(&v0),
        "w0": to_value(&w0),
        "families_hold": holds,
    });
    let text = format!(
        "k = ({}, {})\n  V0 = {v0}\n  W0 = {w0}\n  V' = {vp}\n  stable range conditions: {holds}\n",
        rep.a_plus, rep.a_minus
    );
    Ok(Output { value, text })
}

fn vanishing_text(v: &VanishingVerdict, text: &mut String) {
    let c = &v.conditions;
    let _ = writeln!(text, "  indices: ({}, {}) [{:?}], d(c) = {}", v.indices.k_plus, v.indices.k_minus, v.indices.kind, v.dc);
    for (name, ok) in [
        ("b1 = 0", c.b1_zero),
        ("b+ >= 2", c.b_plus_at_least_2),
        ("b+ fixed >= 1", c.b_plus_fixed_positive),
        ("b+ - b+ fixed odd", c.anti_invariant_odd),
        ("d(c) = 1", c.dc_one),
        ("index bounds", c.index_bounds),
        ("index type", c.kind_matches),
    ] {
        let _ = writeln!(text, "    {name}: {ok}");
    }
    if let Some(cert) = &v.certificate {
        let _ = writeln!(
            text,
            "  certificate: V = {}, W = {}, n = {}, H^(n-1) = {}, forgetful image = {}, verifies: {}",
            cert.v,
            cert.w,
            cert.top_degree,
            cert.h_top_minus_one,
            cert.forgetful_image,
            cert.verifies()
        );
    }
    let _ = writeln!(text, "  verdict: {:?}", v.verdict);
}

fn vanishing_output(name: &str, v: &VanishingVerdict) -> Output {
    let value = json!({
        "command": "vanishing check",
        "source": name,
        "result": to_value(v),
    });
    let mut text = format!("{name}:\n");
    vanishing_text(v, &mut text);
    Output { value, text }
}

fn verdict(s: &Source, route: Route, bf_nonvanishing: bool) -> Result<Output, String> {
    let p = s.profile()?;
    let l = s.lattice()?;
    let g = s.involution()?;
    let link = s.link.as_ref().ok_or("verdict needs a framed link: pass --matrix A|B or an input with \"link\"")?;
    let r = nonsmoothability(p, l, &g, link, route, bf_nonvanishing).map_err(err)?;
    let achievable = eps_achievable(link).map_err(err)?;
    debug_assert_eq!(achievable, r.achievable);
    let value = json!({
        "command": "verdict",
        "source": s.name,
        "report": to_value(&r),
    });
    let mut text = format!(
        "{}: chi {}, sign {}, b+ {}, b+ fixed {}\n  route: {:?}, nonvanishing asserted: {}\n  \
         ee conditions: {} {} {} (trivial summands {}, g-signature {})\n  fixed points m = {} (consistent with link: {})\n  \
         trivial block matches link form: {}\n",
        s.name,
        p.chi,
        p.sign,
        p.b_plus,
        p.b_plus_fixed,
        r.route,
        r.bf_nonvanishing,
        r.ee.cond1,
        r.ee.cond2,
        r.ee.cond3,
        r.n_trivial,
        r.ee.g_sig,
        r.m,
        r.m_consistency,
        r.class_match
    );
    for c in &r.candidates {
        let _ = writeln!(
            text,
            "  sum {}: k = ({}, {}), d(c) = {}, {:?}",
            c.eps_sum, c.indices.k_plus, c.indices.k_minus, c.vanishing.dc, c.vanishing.verdict
        );
    }
    let _ = writeln!(text, "  required by smoothness: {}", fmt_set(&r.required));
    let _ = writeln!(text, "  achievable from link:   {}", fmt_set(&r.achievable));
    for n in &r.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    let _ = writeln!(text, "verdict: {:?}", r.verdict);
    Ok(Output { value, text })
}

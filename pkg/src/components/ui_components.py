import streamlit as st

from components.styling import VERDICT_COLORS, create_status_message
from engine.circsum import CATALOG
from engine.etapower import METHODS
from utils.data_processor import get_verification_summary, parse_params, parse_rat, reports_to_frame
from utils.settings import default_order, default_workers


def create_sidebar_inputs():
    """
    Sidebar controls for a catalog run: which identities, the order override,
    extra parameters and the worker count
    """
    st.sidebar.title("θ Verifier")
    st.sidebar.markdown("### 📚 Catalog")

    names = list(CATALOG)
    selected = st.sidebar.multiselect(
        "Identities to verify:",
        names,
        default=[n for n in names if n.startswith("mod-")],
        help="Leave empty to run the whole catalog"
    )
    for name in selected:
        st.sidebar.caption(f"**{name}**: {CATALOG[name].description}")

    use_default = st.sidebar.checkbox("Use each identity's default order", value=True)
    order_text = st.sidebar.text_input("Order (exact rational):", value=str(default_order()), disabled=use_default)
    params_text = st.sidebar.text_input(
        "Parameters (only with one identity):",
        value="",
        placeholder="m=2, n=3, ys=pi4"
    )
    workers = st.sidebar.slider("Worker threads:", 1, 8, min(8, default_workers()))

    order = None
    errors = []
    if not use_default:
        try:
            order = parse_rat(order_text)
            if order <= 0:
                errors.append("The order must be positive")
        except ValueError as exc:
            errors.append(str(exc))
    try:
        params = parse_params(params_text)
    except ValueError as exc:
        params = {}
        errors.append(str(exc))
    if params and len(selected) != 1:
        errors.append("Parameters need exactly one selected identity")

    return {
        'names': selected,
        'order': order,
        'params': params,
        'workers': workers,
        'errors': errors,
    }


def display_verification_summary(reports):
    summary = get_verification_summary(reports)
    col1, col2, col3, col4 = st.columns(4)
    col1.metric("Checks", summary['total'])
    col2.metric("Passed", summary['passed'])
    col3.metric("Failed / errors", summary['failed'] + summary['errors'])
    col4.metric("Time (s)", summary['total_seconds'])

    if summary['status'] == 'success':
        create_status_message(f"All {summary['total']} identities hold to the requested order", 'pass')
    else:
        create_status_message(f"{summary['failed']} failed and {summary['errors']} raised errors",
                              'fail' if summary['failed'] else 'error')


def display_report_table(reports):
    """
    Show the reports as a table with the verdict column highlighted, plus the
    first mismatch of every failing check in an expander
    """
    frame = reports_to_frame(reports)

    def highlight(value):
        return f"background-color: {VERDICT_COLORS.get(value, VERDICT_COLORS['error'])[0]}"

    st.dataframe(frame.style.map(highlight, subset=['verdict']), use_container_width=True, hide_index=True)

    failing = [r for r in reports if not r.passed]
    if failing:
        with st.expander("Mismatch details"):
            for report in failing:
                if report.first_bad is not None:
                    qexp, xvec, coeff = report.first_bad
                    st.write(f"• **{report.name}** ({report.params}): q^{qexp}, x-powers {list(xvec)}, "
                             f"coefficient of LHS − RHS = `{coeff.render()}`")
                else:
                    st.write(f"• **{report.name}**: {report.detail}")


def display_series(text):
    st.markdown(f'<div class="series-output">{text}</div>', unsafe_allow_html=True)


def create_etapow_inputs():
    col1, col2, col3 = st.columns(3)
    with col1:
        n = st.number_input("n", min_value=1, max_value=4, value=2, step=1)
    with col2:
        order = st.number_input("Coefficients", min_value=2, max_value=80, value=30, step=1)
    with col3:
        methods = st.multiselect("Methods", list(METHODS), default=list(METHODS))
    return int(n), int(order), tuple(methods)

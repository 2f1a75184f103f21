import streamlit as st
import sys
import os
from datetime import datetime

# Add the src directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from engine.circsum import CATALOG, float_residual
from engine.etapower import coefficient_table
from engine.qxseries import pretty
from identity.elaborate import expression_series
from identity.parser import DSLError, parse_expr
from identity.runner import run_catalog, verify_source
from components.ui_components import (
    create_etapow_inputs,
    create_sidebar_inputs,
    display_report_table,
    display_series,
    display_verification_summary,
)
from components.styling import add_footer, apply_custom_styles, create_app_header, create_status_message
from components.report_generator import (
    create_coefficient_chart,
    create_timing_chart,
    create_verification_pdf,
    generate_csv_table,
    generate_json_report,
    write_json_report,
    write_pdf_report,
)
from utils.data_processor import parse_rat, reports_to_frame
from utils.settings import default_order, float_tolerance, log, report_dir

def main():
    """
    Main application function
    """
    st.set_page_config(
        page_title="Circular Summation Verifier",
        page_icon="θ",
        layout="wide",
        initial_sidebar_state="expanded"
    )

    apply_custom_styles()

    if 'reports' not in st.session_state:
        st.session_state.reports = None
    if 'etapow_table' not in st.session_state:
        st.session_state.etapow_table = None

    create_app_header()
    inputs = create_sidebar_inputs()

    catalog_tab, script_tab, expand_tab, etapow_tab = st.tabs(
        ["📚 Catalog", "📝 Identity script", "🔎 Expand", "📈 Eta powers"])

    with catalog_tab:
        display_catalog_tab(inputs)
    with script_tab:
        display_script_tab()
    with expand_tab:
        display_expand_tab()
    with etapow_tab:
        display_etapow_tab()

    add_footer()

def display_catalog_tab(inputs):
    st.markdown("## 📚 Catalog verification")
    for error in inputs['errors']:
        create_status_message(error)

    if st.button("🔄 Verify selected identities", type="primary", disabled=bool(inputs['errors'])):
        with st.spinner("Building both sides exactly..."):
            try:
                st.session_state.reports = run_catalog(
                    inputs['names'], inputs['order'], inputs['params'] or None, inputs['workers'])
            except ValueError as e:
                log(f"Catalog run rejected: {e}", "fail")
                create_status_message(str(e))
                st.session_state.reports = None

    if st.session_state.reports:
        display_results(st.session_state.reports)
        if st.button(f"💾 Save reports to {report_dir()}/"):
            save_reports(st.session_state.reports)

    with st.expander("🔬 Float spot check"):
        display_float_check(inputs)

def save_reports(reports):
    stamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    folder = os.path.join(report_dir(), stamp)
    try:
        write_json_report(reports, os.path.join(folder, "verification.json"))
        if write_pdf_report(reports, os.path.join(folder, "verification.pdf")) is None:
            st.warning("⚠️ PDF report unavailable")
        st.success(f"✅ Reports saved to {folder}")
    except OSError as e:
        log(f"Could not save reports: {e}", "fail")
        create_status_message(f"Could not save reports: {e}")

def display_float_check(inputs):
    """
    Evaluate LHS - RHS of the selected identities numerically at one point
    """
    col1, col2, col3 = st.columns(3)
    with col1:
        tau_text = st.text_input("tau:", value="0.2+0.9j")
    with col2:
        z_text = st.text_input("z:", value="0.3+0.1j")
    with col3:
        y_text = st.text_input("y:", value="0.2")

    if not st.button("Evaluate residuals", disabled=bool(inputs['errors'])):
        return
    try:
        tau, z, y = complex(tau_text), complex(z_text), complex(y_text)
    except ValueError:
        create_status_message("tau, z and y must be Python complex literals such as 0.2+0.9j")
        return
    tolerance = float_tolerance()
    names = inputs['names'] or list(CATALOG)
    for name in names:
        if CATALOG[name].expect != "pass":
            continue
        try:
            residual = abs(float_residual(name, inputs['params'] or None, inputs['order'], tau, [z, y]))
        except ValueError as e:
            create_status_message(f"{name}: {e}")
            continue
        if residual <= tolerance:
            st.write(f"✅ {name}: |LHS - RHS| = {residual:.2e}")
        else:
            st.write(f"❌ {name}: |LHS - RHS| = {residual:.2e} exceeds {tolerance:.0e}")

def display_results(reports):
    """
    Summary, table, timing chart and downloads for a finished run
    """
    display_verification_summary(reports)
    display_report_table(reports)
    st.plotly_chart(create_timing_chart(reports), use_container_width=True)

    stamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    col1, col2, col3 = st.columns(3)
    with col1:
        st.download_button(
            "📄 JSON report",
            data=generate_json_report(reports),
            file_name=f"verification_{stamp}.json",
            mime="application/json"
        )
    with col2:
        st.download_button(
            "📊 CSV table",
            data=generate_csv_table(reports_to_frame(reports)),
            file_name=f"verification_{stamp}.csv",
            mime="text/csv"
        )
    with col3:
        pdf_data = create_verification_pdf(reports)
        if pdf_data:
            st.download_button(
                "📑 PDF summary",
                data=pdf_data,
                file_name=f"verification_{stamp}.pdf",
                mime="application/pdf"
            )
        else:
            st.warning("⚠️ PDF report unavailable")

def display_script_tab():
    st.markdown("## 📝 Verify an identity script")
    uploaded = st.file_uploader("Upload a .thid file", type=["thid", "txt"])
    text = uploaded.read().decode("utf-8") if uploaded else ""
    text = st.text_area("Or edit the script here:", value=text, height=240,
                        placeholder="identity mod-c { order 50; phi(q) + phi(-q) == 2*phi(q^4) }")
    override = st.text_input("Order override (blank keeps each statement's order):", value="")

    if st.button("🔄 Run script", disabled=not text.strip()):
        try:
            order = parse_rat(override) if override.strip() else None
            reports = verify_source(text, order)
        except DSLError as e:
            create_status_message("Syntax error")
            st.code(e.format_message())
            return
        except ValueError as e:
            create_status_message(str(e))
            return
        if reports:
            display_results(reports)
        else:
            st.info("ℹ️ The script contains no identities")

def display_expand_tab():
    st.markdown("## 🔎 Expand an expression")
    col1, col2, col3 = st.columns([3, 1, 1])
    with col1:
        text = st.text_input("Expression:", value="phi(q)")
    with col2:
        order_text = st.text_input("Order:", value=str(default_order()))
    with col3:
        vars_text = st.text_input("Variables:", value="", placeholder="z, y")

    if st.button("Expand"):
        variables = tuple(v.strip() for v in vars_text.split(",") if v.strip())
        try:
            series = expression_series(parse_expr(text, variables), parse_rat(order_text), variables)
            display_series(pretty(series, variables))
        except DSLError as e:
            st.code(e.format_message())
        except ValueError as e:
            create_status_message(str(e))

def display_etapow_tab():
    st.markdown("## 📈 Powers of the Euler product")
    st.write("Coefficients of (q; q)^2n from the product itself and from both lattice-sum formulas.")
    n, count, methods = create_etapow_inputs()

    if st.button("Compute coefficients", disabled=not methods):
        with st.spinner("Enumerating lattice points..."):
            try:
                st.session_state.etapow_table = coefficient_table(n, count, methods)
                log(f"Eta-power table for n={n} with {count} coefficients", "stats")
            except ValueError as e:
                create_status_message(str(e))
                st.session_state.etapow_table = None

    table = st.session_state.etapow_table
    if table is not None:
        if table['agree'].all():
            st.success("✅ All methods agree")
        else:
            st.error(f"❌ Methods disagree at {int((~table['agree']).sum())} coefficient(s)")
        st.plotly_chart(create_coefficient_chart(table), use_container_width=True)
        st.dataframe(table, use_container_width=True, hide_index=True)
        st.download_button(
            "📊 Download CSV",
            data=generate_csv_table(table),
            file_name=f"etapow_n{n}.csv",
            mime="text/csv"
        )

if __name__ == "__main__":
    main()

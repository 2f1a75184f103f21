import streamlit as st

# background, border, text
VERDICT_COLORS = {
    'pass': ('#E3F4EA', '#1E7B43', '#14532D'),
    'fail': ('#FBE9E7', '#B03A2E', '#7B241C'),
    'error': ('#FFF4E0', '#C77C02', '#7A4A00'),
}

VERDICT_ICONS = {'pass': '✅', 'fail': '❌', 'error': '⚠️'}


def apply_custom_styles():
    """
    Dashboard CSS: the gradient banner, monospace series blocks and the
    verdict badges used in summaries
    """
    badges = "\n".join(
        f".verdict-{verdict} {{ background-color: {bg}; border: 1px solid {border}; color: {text}; }}"
        for verdict, (bg, border, text) in VERDICT_COLORS.items()
    )
    st.markdown(f"""
    <style>
    .theta-banner {{
        background: linear-gradient(90deg, #1F3C88 0%, #5893D4 100%);
        padding: 1.6rem 2rem;
        border-radius: 10px;
        color: white;
        margin-bottom: 1.5rem;
    }}
    .theta-banner h1 {{ color: white !important; margin: 0 0 0.3rem 0; }}
    .theta-banner p {{ color: rgba(255, 255, 255, 0.85); margin: 0; }}

    .series-output {{
        font-family: "Fira Code", "Courier New", monospace;
        background-color: #F4F6FB;
        padding: 12px 16px;
        border-left: 4px solid #1F3C88;
        white-space: pre-wrap;
        overflow-x: auto;
    }}

    .verdict-box {{ padding: 0.8rem 1rem; border-radius: 6px; margin: 0.8rem 0; }}
    {badges}

    .stDownloadButton button {{ width: 100%; }}
    </style>
    """, unsafe_allow_html=True)


def create_app_header():
    st.markdown("""
    <div class="theta-banner">
        <h1>θ Circular Summation Verifier</h1>
        <p>Both sides expanded in q and e^(iz), compared coefficient by coefficient</p>
    </div>
    """, unsafe_allow_html=True)


def create_status_message(message, verdict='error'):
    """Coloured box tagged with the verdict's icon."""
    icon = VERDICT_ICONS.get(verdict, 'ℹ️')
    css = f"verdict-{verdict}" if verdict in VERDICT_COLORS else ""
    st.markdown(f'<div class="verdict-box {css}">{icon} {message}</div>', unsafe_allow_html=True)


def add_footer():
    st.caption("Coefficients live in Q(ζ_N) • sympy • lark • pandas • plotly • reportlab")

import io
import json
from datetime import datetime
from pathlib import Path

import plotly.express as px
import plotly.graph_objects as go

from utils.data_processor import get_verification_summary, reports_to_frame
from utils.settings import log


def build_json_report(reports):
    """
    JSON-ready dictionary for a batch of reports: a summary block plus one
    entry per CheckReport in run order
    """
    return {
        'generated': datetime.now().isoformat(timespec='seconds'),
        'summary': get_verification_summary(reports),
        'reports': [report.to_dict() for report in reports],
    }


def generate_json_report(reports):
    return json.dumps(build_json_report(reports), indent=2, ensure_ascii=False)


def write_json_report(reports, path):
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(generate_json_report(reports), encoding='utf-8')
    log(f"JSON report written to {target}", "ok")
    return target


def generate_csv_table(frame):
    """CSV text of any table the tools produce (coefficient tables, report tables)"""
    return frame.to_csv(index=False)


def write_csv_table(frame, path):
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(target, index=False)
    log(f"CSV written to {target}", "ok")
    return target


def create_verification_pdf(reports, title="Theta identity verification"):
    """
    Verification summary as PDF bytes: a summary table followed by one row per
    check. Returns None when the PDF cannot be built.
    """
    try:
        from reportlab.lib import colors
        from reportlab.lib.colors import darkblue, lightgrey
        from reportlab.lib.pagesizes import A4, landscape
        from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
        from reportlab.lib.units import inch
        from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

        buffer = io.BytesIO()
        doc = SimpleDocTemplate(buffer, pagesize=landscape(A4), rightMargin=48, leftMargin=48,
                                topMargin=48, bottomMargin=48)
        styles = getSampleStyleSheet()

        title_style = ParagraphStyle(
            'ReportTitle',
            parent=styles['Heading1'],
            fontSize=22,
            textColor=darkblue,
            spaceAfter=20,
            alignment=1,
            fontName='Helvetica-Bold'
        )
        heading_style = ParagraphStyle(
            'ReportHeading',
            parent=styles['Heading2'],
            fontSize=14,
            textColor=darkblue,
            spaceBefore=16,
            spaceAfter=8,
            fontName='Helvetica-Bold'
        )
        cell_style = ParagraphStyle(
            'Cell',
            parent=styles['Normal'],
            fontSize=8,
            fontName='Helvetica'
        )

        summary = get_verification_summary(reports)
        story = [Paragraph(title, title_style)]

        story.append(Paragraph("Summary", heading_style))
        summary_rows = [
            ["Checks", "Passed", "Failed", "Errors", "Pass rate", "Total time"],
            [summary['total'], summary['passed'], summary['failed'], summary['errors'],
             f"{summary['pass_rate']}%", f"{summary['total_seconds']} s"],
        ]
        summary_table = Table(summary_rows, colWidths=[1.3 * inch] * 6)
        summary_table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), darkblue),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('BACKGROUND', (0, 1), (-1, -1), lightgrey),
            ('GRID', (0, 0), (-1, -1), 1, colors.black)
        ]))
        story.append(summary_table)
        story.append(Spacer(1, 16))

        story.append(Paragraph("Checks", heading_style))
        frame = reports_to_frame(reports)
        rows = [["Identity", "Parameters", "Order", "Verdict", "First mismatch", "Seconds"]]
        verdict_colors = []
        for idx, row in frame.iterrows():
            mismatch = ''
            if row['first_bad_qexp']:
                mismatch = f"q^{row['first_bad_qexp']}: {row['first_bad_coeff']}"
            elif row['detail']:
                mismatch = row['detail']
            rows.append([
                Paragraph(str(row['name']), cell_style),
                Paragraph(str(row['params']), cell_style),
                row['order'],
                row['verdict'],
                Paragraph(mismatch, cell_style),
                f"{row['seconds']:.3f}",
            ])
            color = colors.lightgreen if row['verdict'] == 'pass' else colors.pink
            verdict_colors.append(('BACKGROUND', (3, idx + 1), (3, idx + 1), color))

        check_table = Table(rows, colWidths=[1.6 * inch, 1.8 * inch, 0.7 * inch, 0.8 * inch, 3.6 * inch, 0.8 * inch],
                            repeatRows=1)
        check_table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), darkblue),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 8),
            ('VALIGN', (0, 0), (-1, -1), 'TOP'),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.black)
        ] + verdict_colors))
        story.append(check_table)

        story.append(Spacer(1, 24))
        footer_style = ParagraphStyle(
            'Footer',
            parent=styles['Normal'],
            fontSize=9,
            textColor=colors.grey,
            alignment=1
        )
        story.append(Paragraph(
            f"Generated on {datetime.now().strftime('%B %d, %Y %H:%M')} | exact series comparison", footer_style))

        doc.build(story)
        pdf_data = buffer.getvalue()
        buffer.close()
        log("PDF report generated", "ok")
        return pdf_data

    except Exception as e:
        log(f"Error creating PDF report: {e}", "fail")
        return None


def write_pdf_report(reports, path):
    pdf_data = create_verification_pdf(reports)
    if pdf_data is None:
        return None
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(pdf_data)
    log(f"PDF report written to {target}", "ok")
    return target


def create_coefficient_chart(table):
    """
    Line chart of eta-power coefficients per method. Columns other than k and
    agree are treated as methods.
    """
    methods = [c for c in table.columns if c not in ('k', 'agree')]
    fig = go.Figure()
    for method in methods:
        fig.add_trace(go.Scatter(x=table['k'], y=table[method], mode='lines+markers', name=method))
    mismatches = table[~table['agree']] if 'agree' in table.columns else table.iloc[0:0]
    if len(mismatches):
        fig.add_trace(go.Scatter(x=mismatches['k'], y=mismatches[methods[0]], mode='markers',
                                 marker=dict(color='red', size=12, symbol='x'), name='disagreement'))
    fig.update_layout(
        title="Coefficients of the Euler product power",
        xaxis_title="power of q",
        yaxis_title="coefficient",
        height=420
    )
    return fig


def create_timing_chart(reports):
    """Bar chart of wall time per check, coloured by verdict"""
    frame = reports_to_frame(reports)
    fig = px.bar(
        frame,
        x='name',
        y='seconds',
        color='verdict',
        color_discrete_map={'pass': '#2E8B57', 'fail': '#C0392B', 'error': '#E67E22'},
        title="Wall time per check"
    )
    fig.update_layout(height=400, xaxis_title="identity", yaxis_title="seconds")
    return fig

import streamlit as st
import json
import pandas as pd

from src.core.table_io import parse_poset, parse_table
from src.models.function_model import FiniteFunction
from src.models.poset_model import poset_by_name
from src.services.function_analyzer import FunctionAnalyzer

EXAMPLE_TABLE = """aritygap-table v1
domain: 0 1
codomain: 0 1
arity: 3
table:
0 0 0 -> 0
0 0 1 -> 0
0 1 0 -> 0
0 1 1 -> 1
1 0 0 -> 0
1 0 1 -> 1
1 1 0 -> 1
1 1 1 -> 1
"""


def _poset_input(label: str, key: str):
    """A catalogue name or an uploaded poset file; None when left empty."""
    name = st.text_input(f"{label} (fixture name)", key=f"{key}_name", placeholder="e.g. chain:2, bowtie")
    uploaded = st.file_uploader(f"{label} (poset file)", type=["poset", "txt"], key=f"{key}_file")
    if uploaded:
        return parse_poset(uploaded.getvalue().decode("utf-8"))
    if name.strip():
        return poset_by_name(name.strip())
    return None


def render_single_mode():
    """Render the single table analysis interface."""
    st.header("Single Table Analysis")
    st.markdown("Upload or paste a function table for its gap report and classifier verdicts.")

    col1, col2 = st.columns(2)

    with col1:
        st.subheader("Function Table")
        uploaded_file = st.file_uploader("Upload table", type=["tbl", "txt"])
        table_text = st.text_area("...or paste it", value=EXAMPLE_TABLE, height=300)

    with col2:
        st.subheader("Order (optional)")
        st.caption("Give a domain poset to run the order-preserving classifiers.")
        try:
            poset_a = _poset_input("Domain poset", "poset_a")
            poset_b = _poset_input("Codomain poset", "poset_b")
        except Exception as e:
            st.error(f"Poset rejected: {e}")
            return

    st.markdown("---")

    if st.button("Analyze Table", type="primary", use_container_width=True):
        text = uploaded_file.getvalue().decode("utf-8") if uploaded_file else table_text
        if not text.strip():
            st.error("Please provide a table")
            return

        with st.spinner("Analyzing..."):
            try:
                f = parse_table(text)
                if not isinstance(f, FiniteFunction):
                    st.error("This file holds a set function; upload a function table")
                    return
                result = FunctionAnalyzer().analyze(f, poset_a, poset_b)
                display_analysis_results(result)
            except Exception as e:
                st.error(f"Analysis failed: {str(e)}")


def display_analysis_results(result):
    """Display the gap report and the classifier verdicts."""
    report = result.gap_report

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Arity Gap", report.gap if report else "undefined")
    with col2:
        st.metric("Essential Variables", f"{result.essential_arity} of {result.source_arity}")
    with col3:
        st.metric("Quasi-arity", report.qa if report else "-")

    for note in result.notes:
        st.info(note)

    if report is None:
        return

    tab1, tab2, tab3 = st.tabs(["Gap Report", "Classifiers", "Raw Data"])

    with tab1:
        st.write(f"Decided by: `{report.theorem_case.value}`")
        st.write(f"Determined by oddsupp on the diagonal: {report.oddsupp_determined}")
        minors = pd.DataFrame(
            [(f"f_({i}<-{j})", ess) for (i, j), ess in sorted(report.per_pair_minor_ess.items())],
            columns=["identification minor", "essential arity"],
        )
        st.dataframe(minors, use_container_width=True, hide_index=True)

    with tab2:
        if result.verdicts:
            for name, verdict in sorted(result.verdicts.items()):
                st.write(f"**{name}**")
                st.json(verdict.to_dict() if hasattr(verdict, "to_dict") else {"verdict": verdict})
        else:
            st.info("No specialised classifier applies to this table.")

    with tab3:
        st.json(result.to_dict())

    st.download_button(
        label="Download JSON Report",
        data=json.dumps(result.to_dict(), indent=2),
        file_name="gap_report.json",
        mime="application/json"
    )

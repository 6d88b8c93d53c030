import streamlit as st

from config.settings import settings
from src.core.exceptions import ArityGapError
from src.models.sweep_result import SweepConfig
from src.services.sweep_processor import SweepProcessor


def render_sweep_mode():
    """Render the sweep verification interface."""
    st.header("Sweep Verification")
    st.markdown("Enumerate or sample a function space and compare every classifier with the oracles.")

    col1, col2 = st.columns([2, 1])

    with col1:
        st.subheader("Function Space")
        poset_a = st.text_input("Domain poset fixture", placeholder="e.g. chain:3, bowtie") or None
        domain_size = None if poset_a else st.number_input("Domain size |A|", min_value=1, max_value=6, value=2)
        arity = st.number_input("Arity n", min_value=1, max_value=6, value=3)
        rational = st.checkbox("Rational codomain (pseudo-Boolean sweeps)")
        if rational:
            values_text = st.text_input("Codomain values", value="0, 1, 2, 1/2")
            values = tuple(v for v in values_text.replace(",", " ").split())
            poset_b = None
            codomain_size = None
        else:
            values = None
            poset_b = st.text_input("Codomain poset fixture", placeholder="e.g. chain:3") or None
            codomain_size = None if poset_b else st.number_input(
                "Codomain size |B|", min_value=1, max_value=6, value=2)

    with col2:
        st.subheader("Stream")
        mode = st.radio("Mode", ["exhaustive", "sample"], horizontal=True)
        sample_count = st.number_input("Samples", min_value=1, value=1000, disabled=mode == "exhaustive")
        seed = st.number_input("Seed", min_value=0, value=settings.DEFAULT_SEED)
        monotone = st.checkbox("Order-preserving tables only")

    st.markdown("---")

    if st.button("Start Sweep", type="primary", use_container_width=True):
        try:
            config = SweepConfig(
                domain_size=domain_size,
                codomain_size=codomain_size,
                arity=arity,
                mode=mode,
                sample_count=sample_count,
                seed=seed if mode == "sample" else None,
                monotone_only=monotone,
                poset_a=poset_a,
                poset_b=poset_b,
                rational_values=values,
            )
        except (ValueError, ArityGapError) as e:
            st.error(f"Invalid configuration: {e}")
            return

        with st.spinner(f"Sweeping {config.describe()}..."):
            try:
                report = SweepProcessor().run(config)
            except Exception as e:
                st.error(f"Sweep failed: {str(e)}")
                return

        display_sweep_results(report)


def display_sweep_results(report):
    """Display the tallies, counterexamples and the machine-readable block."""
    if report.is_clean():
        st.success("Every classifier agrees with the oracles.")
    else:
        st.error("Disagreements or invariant violations found.")

    col1, col2, col3, col4 = st.columns(4)
    with col1:
        st.metric("Analysed", report.total)
    with col2:
        st.metric("Skipped", report.skipped)
    with col3:
        st.metric("Disagreements", report.disagreement_count)
    with col4:
        st.metric("Wall-clock", f"{report.elapsed_seconds:.1f}s")

    frame = report.tally_frame()
    if not frame.empty:
        st.subheader("Tallies")
        st.dataframe(frame, use_container_width=True, hide_index=True)

    if report.disagreements:
        with st.expander(f"Counterexamples ({len(report.disagreements)})"):
            for counterexample in report.disagreements:
                st.code(counterexample.to_line())

    if report.violations:
        with st.expander(f"Invariant violations ({len(report.violations)})"):
            for violation in report.violations:
                st.write(violation.to_line())

    st.download_button(
        label="Download Machine-Readable Report",
        data=report.machine_block() + "\n",
        file_name="sweep_report.txt",
        mime="text/plain"
    )

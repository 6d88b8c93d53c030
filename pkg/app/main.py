import streamlit as st
import sys
from pathlib import Path

# root path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


from single_mode import render_single_mode
from sweep_mode import render_sweep_mode

def main():
    st.set_page_config(
        page_title="Arity Gap Workbench",
        layout="wide",
        initial_sidebar_state="expanded"
    )

    st.title("Arity Gap Workbench")
    st.markdown("""
    **Classify finite functions by their arity gap**

    Analyze a single function table, or sweep a whole function space and check every
    classifier against brute-force oracles.
    """)

    # Sidebar for mode selection
    st.sidebar.title("Mode")
    mode = st.sidebar.radio(
        "Select operation mode:",
        ["Single Table Analysis", "Sweep Verification"],
        help="Analyze one table in detail or verify the classifiers over a function space"
    )

    if mode == "Single Table Analysis":
        render_single_mode()
    else:
        render_sweep_mode()

    st.markdown("---")
    st.markdown("*Exact rational arithmetic throughout; tables use the `aritygap-table v1` format.*")

if __name__ == "__main__":
    main()

#include <pybind11/pybind11.h>

namespace py = pybind11;

PYBIND11_MODULE(_hamflow, m) {
    m.doc() = "hamiltonian flow lattice toolkit";
    m.attr("__version__") = "0.1.0";
}

// Python bindings for the core operations: group parsing and catalog access,
// subgroup class enumeration, and symbolic Whitehead group reports. Values
// cross the boundary as plain Python types; exact rationals become strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "whcryst/catalog.hpp"
#include "whcryst/errors.hpp"
#include "whcryst/finite_group.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/ktheory.hpp"
#include "whcryst/linalg.hpp"
#include "whcryst/rational.hpp"
#include "whcryst/report.hpp"
#include "whcryst/vc_enumerate.hpp"

namespace py = pybind11;
using namespace whcryst;

namespace {

py::list vec_list(const VecQ& v) {
    py::list out;
    for (const Rat& x : v) out.append(rat_str(x));
    return out;
}

py::list vec_list(const VecZ& v) {
    py::list out;
    for (const Int& x : v) out.append(x.str());
    return out;
}

py::dict finite_class_dict(const FiniteClass& c) {
    py::dict d;
    d["type"] = type_name(c.type);
    d["point"] = vec_list(c.point);
    d["order"] = static_cast<int>(c.stab.table.n);
    d["fix_dim"] = c.fix_dim;
    d["certificate"] = c.certificate;
    return d;
}

py::dict vc_class_dict(const VCClass& c) {
    py::dict d;
    d["descriptor"] = descriptor_str(c.descriptor);
    d["line_point"] = vec_list(c.line.p);
    d["line_direction"] = vec_list(c.line.h);
    d["certificate"] = c.certificate;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact crystallographic subgroup classification and Whitehead "
              "group evaluation";
    m.attr("__version__") = "0.1.0";

    // Base first: pybind tries translators newest-first, so the derived
    // registrations below win for their own types.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NotInCatalogError>(m, "NotInCatalogError", PyExc_KeyError);

    py::class_<CrystGroup>(m, "Group")
        .def_property_readonly("name", [](const CrystGroup& g) { return g.name; })
        .def_property_readonly("dim", [](const CrystGroup& g) { return g.dim; })
        .def("__repr__", [](const CrystGroup& g) {
            return "<Group " + g.name + " dim=" + std::to_string(g.dim) + ">";
        });

    m.def(
        "parse_group",
        [](const std::string& text, const std::string& origin) {
            return parse_group(text, origin);
        },
        py::arg("text"), py::arg("origin") = "<input>",
        "Parse and validate a group from its JSON description.");

    m.def("load_group", &load_group_source, py::arg("source"),
          "Load a group from 'catalog:<name>' or from a file path.");

    m.def(
        "catalog",
        []() {
            py::list out;
            for (const CatalogEntry& e : catalog_entries()) {
                py::dict d;
                d["name"] = e.name;
                d["dim"] = e.dim;
                d["summary"] = e.summary;
                out.append(d);
            }
            return out;
        },
        "List the built-in groups: name, dimension, one-line summary.");

    m.def(
        "point_group_type",
        [](const CrystGroup& g) {
            std::vector<MatZ> pg = point_group(g);
            FiniteGroupTable t = make_table(
                pg, [](const MatZ& a, const MatZ& b) { return mz_mul(a, b); },
                [](const MatZ& a, const MatZ& b) { return a == b; });
            return type_name(identify_type(t));
        },
        py::arg("group"), "Isomorphism type of the point group.");

    m.def(
        "finite_classes",
        [](const CrystGroup& g) {
            py::list out;
            for (const FiniteClass& c : maximal_finite_classes(g))
                out.append(finite_class_dict(c));
            return out;
        },
        py::arg("group"),
        "Conjugacy class representatives of maximal finite subgroups.");

    m.def(
        "vc_classes",
        [](const CrystGroup& g, int jobs) {
            SubgroupClassList cl = maximal_vc_classes(g, jobs);
            py::dict d;
            py::list fin, vc;
            for (const FiniteClass& c : cl.finite_classes) fin.append(finite_class_dict(c));
            for (const VCClass& c : cl.vc_classes) vc.append(vc_class_dict(c));
            d["finite_classes"] = fin;
            d["vc_classes"] = vc;
            d["zero_bucket_note"] = cl.zero_bucket_note;
            return d;
        },
        py::arg("group"), py::arg("jobs") = 1,
        "Maximal finite and maximal infinite virtually cyclic classes of a "
        "three-dimensional group.");

    m.def(
        "whitehead_group_json",
        [](const CrystGroup& g, int jobs) { return report_json(whitehead_group(g, jobs)); },
        py::arg("group"), py::arg("jobs") = 1,
        "Whitehead group report for a three-dimensional group, as a JSON string.");

    m.def(
        "whitehead_group_text",
        [](const CrystGroup& g, int jobs) { return report_text(whitehead_group(g, jobs)); },
        py::arg("group"), py::arg("jobs") = 1,
        "Whitehead group report for a three-dimensional group, as plain text.");

    m.def(
        "corollary2_json",
        [](const CrystGroup& g, int jobs) { return report_json(corollary2(g, jobs)); },
        py::arg("group"), py::arg("jobs") = 1,
        "Whitehead group report for the product of a plane group with Z, "
        "evaluated classwise and cross-checked, as a JSON string.");

    m.def(
        "corollary2_text",
        [](const CrystGroup& g, int jobs) { return report_text(corollary2(g, jobs)); },
        py::arg("group"), py::arg("jobs") = 1,
        "Whitehead group report for the product of a plane group with Z, "
        "evaluated classwise and cross-checked, as plain text.");
}

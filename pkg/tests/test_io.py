"""JSON codecs: lossless roundtrips, schema rejection, version handling."""

import json

import pytest

from tropibary.approximation import BoxElement, Cover, IndexElement, PolytopeElement
from tropibary.core import NEG_INF, ZERO, ConvexParams, TropVector, scalar
from tropibary.errors import BadInput, SchemaError
from tropibary.geometry import Box, TropPolytope
from tropibary.io import (
    box_from_json,
    box_to_json,
    cover_from_json,
    cover_to_json,
    dump_document,
    map_from_json,
    map_to_json,
    measure_from_json,
    measure_to_json,
    params_from_json,
    params_to_json,
    polytope_from_json,
    polytope_to_json,
    read_document,
    scalar_from_json,
    scalar_to_json,
    space_from_json,
    space_to_json,
    table_from_json,
    table_to_json,
    validate_document,
    vector_from_json,
    vector_to_json,
)
from tropibary.measures import FiniteSpace, FunctionTable, IdemMeasure, SpaceMap


class TestScalarAndVector:
    def test_scalar_roundtrip(self):
        for text in ("-1/3", "0", "-inf", "2"):
            assert scalar_to_json(scalar_from_json(text)) == str(scalar(text))
        assert scalar_from_json(-2) == scalar("-2")

    def test_vector_roundtrip(self):
        v = TropVector([scalar("-1/2"), NEG_INF, ZERO])
        assert vector_from_json(vector_to_json(v)) == v
        assert vector_to_json(v) == ["-1/2", "-inf", "0"]

    def test_params_roundtrip(self):
        params = ConvexParams(scalar("-1/4"), ZERO)
        assert params_from_json(params_to_json(params)) == params
        assert params_to_json(params) == {"t": "-1/4", "p": "0"}


class TestSpaces:
    def test_full_space_roundtrip(self):
        space = FiniteSpace(2, labels=("a", "b"), points=(TropVector([0, -1]), TropVector([-1, 0])))
        assert space_from_json(space_to_json(space)) == space

    def test_n_derived_from_labels(self):
        assert space_from_json({"labels": ["x", "y", "z"]}).n == 3

    def test_n_derived_from_points(self):
        space = space_from_json({"points": [["0"], ["-1"]]})
        assert space.n == 2
        assert space.points == (TropVector([0]), TropVector([-1]))

    def test_table_roundtrip(self):
        space = FiniteSpace(3)
        table = FunctionTable(space, ["0", "-1/2", "2"])
        again = table_from_json(table_to_json(table))
        assert again.space == space and again.values == table.values

    def test_map_roundtrip(self):
        f = SpaceMap(FiniteSpace(3), FiniteSpace(2), [0, 1, 1])
        g = map_from_json(map_to_json(f))
        assert g.source == f.source and g.target == f.target and g.table == f.table


class TestMeasures:
    def test_labeled_roundtrip(self):
        space = FiniteSpace(2, labels=("a", "b"))
        mu = IdemMeasure([(0, ZERO), (1, scalar("-1/3"))], space=space)
        doc = measure_to_json(mu)
        assert doc["atoms"] == [{"at": "a", "w": "0"}, {"at": "b", "w": "-1/3"}]
        assert measure_from_json(doc) == mu

    def test_point_measure_roundtrip(self):
        mu = IdemMeasure([(TropVector([0, -1]), ZERO), (TropVector([-1, 0]), scalar("-1/2"))])
        doc = measure_to_json(mu)
        assert "space" not in doc
        assert measure_from_json(doc) == mu

    def test_coordinate_atoms_resolve_through_embedding(self):
        space = FiniteSpace(2, points=(TropVector([0, -1]), TropVector([-1, 0])))
        doc = {"space": space_to_json(space), "atoms": [{"at": ["0", "-1"], "w": "0"}]}
        mu = measure_from_json(doc)
        assert mu.atoms == (((0), ZERO),)

    def test_unembedded_coordinate_atom_rejected(self):
        doc = {"space": {"n": 2}, "atoms": [{"at": ["0", "-1"], "w": "0"}]}
        with pytest.raises(SchemaError, match="embedded space"):
            measure_from_json(doc)

    def test_unknown_embedded_point_rejected(self):
        space = FiniteSpace(1, points=(TropVector([0, 0]),))
        doc = {"space": space_to_json(space), "atoms": [{"at": ["-1", "-1"], "w": "0"}]}
        with pytest.raises(SchemaError, match="not an embedded point"):
            measure_from_json(doc)

    def test_label_without_space_rejected(self):
        with pytest.raises(SchemaError, match="without a space"):
            measure_from_json({"atoms": [{"at": "a", "w": "0"}]})

    def test_measure_of_measures_has_no_file_form(self):
        space = FiniteSpace(2)
        inner = IdemMeasure.from_weights(space, [ZERO, scalar("-1")])
        big = IdemMeasure([(inner, ZERO)])
        with pytest.raises(BadInput, match="no file form"):
            measure_to_json(big)


class TestGeometryDocs:
    def test_polytope_roundtrip(self):
        poly = TropPolytope([TropVector([0, 0]), TropVector([-1, -2])])
        doc = polytope_to_json(poly)
        validate_document(doc, "polytope")
        assert polytope_from_json(doc) == poly

    def test_box_roundtrip(self):
        box = Box(TropVector([-1, -2]), TropVector([0, 0]))
        assert box_from_json(box_to_json(box)) == box

    def test_geometric_cover_roundtrip(self):
        cover = Cover(
            [
                BoxElement(Box(TropVector([-1, -1]), TropVector([0, 0]))),
                PolytopeElement(TropPolytope([TropVector([-2, -2]), TropVector([-1, -1])])),
            ]
        )
        doc = cover_to_json(cover)
        validate_document(doc, "cover")
        again = cover_from_json(doc)
        assert isinstance(again.elements[0], BoxElement)
        assert again.elements[0].box == cover.elements[0].box
        assert isinstance(again.elements[1], PolytopeElement)
        assert again.elements[1].poly == cover.elements[1].poly

    def test_index_cover_roundtrip(self):
        cover = Cover([IndexElement([2, 0]), IndexElement([1])])
        doc = cover_to_json(cover)
        validate_document(doc, "cover")
        again = cover_from_json(doc)
        assert isinstance(again.elements[0], IndexElement)
        assert again.elements[0].indices == frozenset({0, 2})
        assert again.elements[1].indices == frozenset({1})


class TestValidationAndFiles:
    def test_dump_is_deterministic(self):
        doc = {"b": 1, "a": {"d": [1.5, "x"], "c": None}}
        text = dump_document(doc)
        assert text == dump_document(json.loads(text))
        assert text.index('"a"') < text.index('"b"')

    def test_missing_required_field(self):
        with pytest.raises(SchemaError, match="measure"):
            validate_document({"space": {"n": 2}}, "measure")

    def test_bad_scalar_pattern(self):
        with pytest.raises(SchemaError):
            validate_document({"atoms": [{"at": "a", "w": "nan"}]}, "measure")
        with pytest.raises(SchemaError):
            validate_document({"atoms": [{"at": "a", "w": "1.2.3"}]}, "measure")

    def test_wrong_version_rejected(self):
        doc = {"version": 2, "atoms": [{"at": ["0"], "w": "0"}]}
        with pytest.raises(SchemaError, match="version"):
            validate_document(doc, "measure")

    def test_read_document_roundtrip(self, tmp_path):
        mu = IdemMeasure([(TropVector([0, -1]), ZERO)])
        path = tmp_path / "m.json"
        path.write_text(dump_document(measure_to_json(mu)))
        assert measure_from_json(read_document(str(path), "measure")) == mu

    def test_read_document_missing_file(self, tmp_path):
        with pytest.raises(SchemaError, match="no such file"):
            read_document(str(tmp_path / "absent.json"), "measure")

    def test_read_document_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(SchemaError, match="not JSON"):
            read_document(str(path), "measure")

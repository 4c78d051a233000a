import threading

import numpy as np
import pytest
from fastapi.testclient import TestClient

from docuscan import Raster, decode_bytes, encode_png_bytes
from docuscan.service import create_app
from docuscan.service.sessions import apply_edit
from scenes import document_scene


@pytest.fixture
def doc_png_bytes():
    img, _ = document_scene(ramp=False, w=320, h=240, origin=(40, 30), size=(230, 170))
    return encode_png_bytes(img)


@pytest.fixture
def client(tmp_path):
    app = create_app(save_dir=tmp_path)
    with TestClient(app) as c:
        yield c


def upload(client, payload):
    return client.post("/sessions", content=payload,
                       headers={"content-type": "image/png"})


def image_shape(client, sid, mode=None):
    url = f"/sessions/{sid}/image" + (f"?mode={mode}" if mode else "")
    r = client.get(url)
    assert r.status_code == 200
    return decode_bytes(r.content).px.shape


class TestCreateSession:
    def test_valid_document_returns_quad(self, client, doc_png_bytes):
        r = upload(client, doc_png_bytes)
        assert r.status_code == 201
        body = r.json()
        assert set(body) == {"id", "detected_quad"}
        q = body["detected_quad"]
        assert abs(q["tl"]["x"] - 40) <= 2 and abs(q["tl"]["y"] - 30) <= 2
        assert abs(q["br"]["x"] - 269) <= 2 and abs(q["br"]["y"] - 199) <= 2

    def test_empty_body_400(self, client):
        assert upload(client, b"").status_code == 400

    def test_garbage_body_400(self, client):
        assert upload(client, b"not an image").status_code == 400

    def test_all_black_422_no_document(self, client):
        payload = encode_png_bytes(Raster(np.zeros((80, 100, 3), np.uint8)))
        r = upload(client, payload)
        assert r.status_code == 422
        assert r.json() == {"error": "no_document"}

    def test_multipart_upload(self, client, doc_png_bytes):
        r = client.post("/sessions", files={"file": ("doc.png", doc_png_bytes, "image/png")})
        assert r.status_code == 201

    def test_ambiguous_detection_maps_to_no_document(self, client, doc_png_bytes,
                                                     monkeypatch):
        from docuscan import CornerOrderingError
        from docuscan.service import app as app_module

        def boom(img, cfg=None):
            raise CornerOrderingError("ambiguous tl corner")

        monkeypatch.setattr(app_module.pipeline, "scan", boom)
        r = upload(client, doc_png_bytes)
        assert r.status_code == 422
        assert r.json() == {"error": "no_document"}


class TestGetImage:
    def test_thresh_png_is_binary(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        r = client.get(f"/sessions/{sid}/image?mode=thresh")
        assert r.status_code == 200
        assert r.headers["content-type"] == "image/png"
        decoded = decode_bytes(r.content)
        assert set(np.unique(decoded.px)) <= {0, 255}

    def test_mode_switch_is_non_destructive(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        first = client.get(f"/sessions/{sid}/image?mode=thresh").content
        client.get(f"/sessions/{sid}/image?mode=color")
        again = client.get(f"/sessions/{sid}/image?mode=thresh").content
        assert first == again

    def test_unknown_id_404(self, client):
        assert client.get("/sessions/deadbeef/image?mode=gray").status_code == 404

    def test_bad_mode_400(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        assert client.get(f"/sessions/{sid}/image?mode=sepia").status_code == 400


class TestCrop:
    def test_identity_crop_full_frame_shuffled(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        before = client.get(f"/sessions/{sid}/image?mode=thresh")
        h, w = decode_bytes(before.content).px.shape[:2]
        pts = [{"x": w - 1, "y": h - 1}, {"x": 0, "y": 0},
               {"x": w - 1, "y": 0}, {"x": 0, "y": h - 1}]
        r = client.post(f"/sessions/{sid}/crop", json={"points": pts})
        assert r.status_code == 200
        a = decode_bytes(before.content).px.astype(int)
        b = decode_bytes(r.content).px.astype(int)
        assert a.shape == b.shape
        assert np.abs(a - b).max() <= 1

    def test_wrong_point_count_400(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        pts = [{"x": 0, "y": 0}, {"x": 5, "y": 0}, {"x": 0, "y": 5}]
        assert client.post(f"/sessions/{sid}/crop", json={"points": pts}).status_code == 400

    def test_ambiguous_diamond_409_reclick(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        pts = [{"x": 20, "y": 5}, {"x": 35, "y": 15}, {"x": 20, "y": 25}, {"x": 5, "y": 15}]
        r = client.post(f"/sessions/{sid}/crop", json={"points": pts})
        assert r.status_code == 409
        assert r.json() == {"error": "reclick_corners"}

    def test_out_of_bounds_400(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        pts = [{"x": -5, "y": 0}, {"x": 40, "y": 0}, {"x": 0, "y": 30}, {"x": 40, "y": 30}]
        assert client.post(f"/sessions/{sid}/crop", json={"points": pts}).status_code == 400


class TestRotate:
    def test_right_then_left_restores_bytes(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        before = client.get(f"/sessions/{sid}/image?mode=gray").content
        client.post(f"/sessions/{sid}/rotate", json={"dir": "right"})
        after = client.post(f"/sessions/{sid}/rotate", json={"dir": "left"})
        assert after.content == before

    def test_four_rights_restore(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        before = client.get(f"/sessions/{sid}/image").content
        for _ in range(4):
            r = client.post(f"/sessions/{sid}/rotate", json={"dir": "right"})
        assert r.content == before

    def test_bad_dir_400(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        assert client.post(f"/sessions/{sid}/rotate", json={"dir": "up"}).status_code == 400

    def test_unknown_session_404(self, client):
        assert client.post("/sessions/none/rotate", json={"dir": "left"}).status_code == 404


class TestSave:
    def test_save_names_and_collisions(self, client, tmp_path, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        first = client.post(f"/sessions/{sid}/save")
        assert first.status_code == 200
        assert first.json()["path"].endswith("Scanned.jpg")
        second = client.post(f"/sessions/{sid}/save")
        assert second.json()["path"].endswith("Scanned-1.jpg")
        third = client.post(f"/sessions/{sid}/save")
        assert third.json()["path"].endswith("Scanned-2.jpg")
        for r in (first, second, third):
            assert (tmp_path / r.json()["path"].split("/")[-1]).exists()

    def test_unwritable_save_dir_507(self, tmp_path, doc_png_bytes):
        blocker = tmp_path / "blocker"
        blocker.write_text("a file, not a directory")
        app = create_app(save_dir=blocker / "sub")
        with TestClient(app) as client:
            sid = upload(client, doc_png_bytes).json()["id"]
            assert client.post(f"/sessions/{sid}/save").status_code == 507


class TestDelete:
    def test_delete_then_404(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        assert client.delete(f"/sessions/{sid}").status_code == 204
        assert client.get(f"/sessions/{sid}/image").status_code == 404

    def test_delete_unknown_404(self, client):
        assert client.delete("/sessions/nope").status_code == 404


class TestSessionSemantics:
    def test_edit_log_replay_matches_served_image(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        shape = image_shape(client, sid, "gray")
        h, w = shape[:2]
        pts = [{"x": 5, "y": 4}, {"x": w - 6, "y": 6}, {"x": 4, "y": h - 5},
               {"x": w - 4, "y": h - 6}]
        client.post(f"/sessions/{sid}/rotate", json={"dir": "right"})
        client.post(f"/sessions/{sid}/rotate", json={"dir": "right"})
        client.post(f"/sessions/{sid}/crop", json={"points": pts})
        served = decode_bytes(client.get(f"/sessions/{sid}/image").content)

        from docuscan.pipeline import render
        session = client.app.state.store.get(sid)
        img = render(session.result, session.mode)
        for edit in session.edit_log:
            img = apply_edit(img, edit)
        expect = img.px if img.px.ndim == 3 else img.px
        got = served.px[:, :, 0] if expect.ndim == 2 else served.px
        assert np.array_equal(got, expect)

    def test_lru_eviction(self, tmp_path, doc_png_bytes):
        app = create_app(save_dir=tmp_path, store_capacity=2)
        with TestClient(app) as client:
            sids = [upload(client, doc_png_bytes).json()["id"] for _ in range(3)]
            assert client.get(f"/sessions/{sids[0]}/image").status_code == 404
            assert client.get(f"/sessions/{sids[1]}/image").status_code == 200
            assert client.get(f"/sessions/{sids[2]}/image").status_code == 200

    def test_same_session_rotations_serialize(self, client, doc_png_bytes):
        sid = upload(client, doc_png_bytes).json()["id"]
        before = client.get(f"/sessions/{sid}/image").content
        errors = []

        def spin():
            try:
                for _ in range(5):
                    r = client.post(f"/sessions/{sid}/rotate", json={"dir": "right"})
                    assert r.status_code == 200
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

        threads = [threading.Thread(target=spin) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        after = client.get(f"/sessions/{sid}/image").content
        assert after == before  # 40 quarter turns = identity

    def test_independent_sessions_do_not_interfere(self, client, doc_png_bytes):
        sid_a = upload(client, doc_png_bytes).json()["id"]
        sid_b = upload(client, doc_png_bytes).json()["id"]
        client.post(f"/sessions/{sid_a}/rotate", json={"dir": "right"})
        shape_a = image_shape(client, sid_a)
        shape_b = image_shape(client, sid_b)
        assert shape_a[0] == shape_b[1] and shape_a[1] == shape_b[0]


class TestStaticUi:
    def test_ui_served_when_bundle_present(self, tmp_path, doc_png_bytes):
        ui = tmp_path / "dist"
        ui.mkdir()
        (ui / "index.html").write_text("<!doctype html><title>scanner</title>")
        app = create_app(save_dir=tmp_path, ui_dir=ui)
        with TestClient(app) as client:
            r = client.get("/")
            assert r.status_code == 200
            assert "scanner" in r.text
            assert upload(client, doc_png_bytes).status_code == 201

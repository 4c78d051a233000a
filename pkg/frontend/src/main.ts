import { ApiError, ScanClient } from "./api.js";
import { clampToImage, displayToImage, imageToDisplay } from "./coords.js";
import { initialState, reduce, type Effect, type UiEvent, type UiState } from "./state.js";
import type { Pt, QuadWire, ScanMode } from "./types.js";

const client = new ScanClient("");

const fileInput = document.getElementById("file-input") as HTMLInputElement;
const cameraButton = document.getElementById("camera-button") as HTMLButtonElement;
const cropButton = document.getElementById("crop-button") as HTMLButtonElement;
const rotateLeft = document.getElementById("rotate-left") as HTMLButtonElement;
const rotateRight = document.getElementById("rotate-right") as HTMLButtonElement;
const saveButton = document.getElementById("save-button") as HTMLButtonElement;
const canvas = document.getElementById("preview") as HTMLCanvasElement;
const toastBox = document.getElementById("toast") as HTMLDivElement;
const statusLine = document.getElementById("status") as HTMLDivElement;
const modeRadios = Array.from(
  document.querySelectorAll<HTMLInputElement>("input[name=mode]"),
);

let state: UiState = initialState;
let image: ImageBitmap | null = null;
let detectedQuad: QuadWire | null = null;
let busy = false;
let flashUntil = 0;

function toast(message: string) {
  toastBox.textContent = message;
  toastBox.classList.add("visible");
  setTimeout(() => toastBox.classList.remove("visible"), 3200);
}

function setBusy(value: boolean) {
  busy = value;
  for (const el of [fileInput, cameraButton, cropButton, rotateLeft, rotateRight, saveButton]) {
    el.disabled = value;
  }
}

function describePhase(): string {
  switch (state.phase) {
    case "idle":
      return "Load an image or capture a camera frame.";
    case "loaded":
      return "Keys: r/l rotate, s save, c crop, Esc close.";
    case "cropping":
      return `Crop: click the 4 corners in any order (${state.clickBuffer.length}/4).`;
    case "error":
      return "Session lost. Load an image to start over.";
  }
}

function redraw() {
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (image !== null) {
    ctx.drawImage(image, 0, 0, canvas.width, canvas.height);
  }
  const dims: [number, number, number, number] | null = image
    ? [canvas.width, canvas.height, image.width, image.height]
    : null;

  if (detectedQuad !== null && dims !== null && state.phase === "loaded") {
    const cycle = [detectedQuad.tl, detectedQuad.tr, detectedQuad.br, detectedQuad.bl];
    ctx.strokeStyle = "rgba(80, 200, 120, 0.9)";
    ctx.lineWidth = 2;
    ctx.beginPath();
    cycle.forEach((p, i) => {
      const d = imageToDisplay(p, ...dims);
      if (i === 0) ctx.moveTo(d.x, d.y);
      else ctx.lineTo(d.x, d.y);
    });
    ctx.closePath();
    ctx.stroke();
  }

  if (dims !== null) {
    const flashing = Date.now() < flashUntil;
    state.clickBuffer.forEach((p, i) => {
      const d = imageToDisplay(p, ...dims);
      ctx.fillStyle = flashing ? "rgba(230, 70, 70, 0.95)" : "rgba(70, 130, 230, 0.95)";
      ctx.beginPath();
      ctx.arc(d.x, d.y, 9, 0, Math.PI * 2);
      ctx.fill();
      ctx.fillStyle = "white";
      ctx.font = "12px sans-serif";
      ctx.textAlign = "center";
      ctx.textBaseline = "middle";
      ctx.fillText(String(i + 1), d.x, d.y);
    });
  }

  statusLine.textContent = state.banner ?? describePhase();
}

async function showBlob(blob: Blob) {
  image = await createImageBitmap(blob);
  canvas.width = Math.min(image.width, 900);
  canvas.height = Math.round((canvas.width * image.height) / image.width);
  redraw();
}

function dispatch(event: UiEvent) {
  const [next, effects] = reduce(state, event);
  state = next;
  redraw();
  for (const effect of effects) void runEffect(effect);
}

async function runEffect(effect: Effect) {
  if (state.sessionId === null && effect.kind !== "deleteSession") return;
  try {
    switch (effect.kind) {
      case "refreshImage": {
        setBusy(true);
        const blob = await client.fetchImage(state.sessionId!, effect.mode);
        await showBlob(blob);
        break;
      }
      case "requestCrop": {
        setBusy(true);
        try {
          const blob = await client.crop(state.sessionId!, effect.points);
          dispatch({ kind: "cropAccepted" });
          await showBlob(blob);
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) {
            toast("re-click corners");
            dispatch({ kind: "cropRejected" });
          } else {
            throw err;
          }
        }
        break;
      }
      case "deleteSession":
        await client.deleteSession(effect.sessionId);
        image = null;
        detectedQuad = null;
        redraw();
        break;
      case "flashMarkers":
        flashUntil = Date.now() + 600;
        redraw();
        break;
    }
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      dispatch({ kind: "sessionLost" });
    } else {
      toast(String(err));
    }
  } finally {
    setBusy(false);
  }
}

async function uploadBlob(blob: Blob) {
  setBusy(true);
  try {
    const created = await client.createSession(blob);
    detectedQuad = created.detected_quad;
    for (const radio of modeRadios) radio.checked = radio.value === "thresh";
    dispatch({ kind: "sessionCreated", sessionId: created.id });
  } catch (err) {
    const message =
      err instanceof ApiError && err.code === "no_document"
        ? "no document found"
        : `upload failed: ${err}`;
    toast(message);
    dispatch({ kind: "loadFailed", message });
  } finally {
    setBusy(false);
  }
}

async function captureCameraFrame() {
  let stream: MediaStream;
  try {
    stream = await navigator.mediaDevices.getUserMedia({ video: true });
  } catch {
    toast("camera unavailable, pick a file instead");
    fileInput.click();
    return;
  }
  const video = document.createElement("video");
  video.srcObject = stream;
  await video.play();
  const grab = document.createElement("canvas");
  grab.width = video.videoWidth;
  grab.height = video.videoHeight;
  grab.getContext("2d")!.drawImage(video, 0, 0);
  stream.getTracks().forEach((t) => t.stop());
  grab.toBlob((blob) => {
    if (blob !== null) void uploadBlob(blob);
  }, "image/png");
}

fileInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (file) void uploadBlob(file);
  fileInput.value = "";
});

cameraButton.addEventListener("click", () => void captureCameraFrame());
cropButton.addEventListener("click", () => dispatch({ kind: "enterCrop" }));

function rotate(dir: "left" | "right") {
  if (state.phase !== "loaded" || busy || state.sessionId === null) return;
  setBusy(true);
  client
    .rotate(state.sessionId, dir)
    .then(showBlob)
    .catch((err) => toast(String(err)))
    .finally(() => setBusy(false));
}

rotateLeft.addEventListener("click", () => rotate("left"));
rotateRight.addEventListener("click", () => rotate("right"));

function saveImage() {
  if (state.phase !== "loaded" || busy || state.sessionId === null) return;
  setBusy(true);
  client
    .save(state.sessionId)
    .then((path) => toast(`saved: ${path}`))
    .catch((err) => toast(String(err)))
    .finally(() => setBusy(false));
}

saveButton.addEventListener("click", saveImage);

canvas.addEventListener("click", (ev) => {
  if (state.phase !== "cropping" || busy || image === null) return;
  const rect = canvas.getBoundingClientRect();
  const display: Pt = { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
  if (display.x < 0 || display.y < 0 || display.x > rect.width || display.y > rect.height) {
    return;
  }
  const point = clampToImage(
    displayToImage(display, rect.width, rect.height, image.width, image.height),
    image.width,
    image.height,
  );
  dispatch({ kind: "canvasClick", point });
});

for (const radio of modeRadios) {
  radio.addEventListener("change", () => {
    if (radio.checked) dispatch({ kind: "setMode", mode: radio.value as ScanMode });
  });
}

document.addEventListener("keydown", (ev) => {
  if (busy) return;
  switch (ev.key) {
    case "r":
    case "R":
      rotate("right");
      break;
    case "l":
    case "L":
      rotate("left");
      break;
    case "s":
    case "S":
      saveImage();
      break;
    case "c":
    case "C":
      dispatch({ kind: "enterCrop" });
      break;
    case "Escape":
      dispatch({ kind: "escape" });
      break;
  }
});

redraw();

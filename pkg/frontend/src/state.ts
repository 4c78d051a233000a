import type { Pt, ScanMode } from "./types.js";

/**
 * UI state machine. All transitions are pure: the reducer returns the
 * next state plus effects (service calls) for the shell to run, which
 * keeps every pixel operation on the service side.
 */
export type Phase = "idle" | "loaded" | "cropping" | "error";

export interface UiState {
  phase: Phase;
  sessionId: string | null;
  mode: ScanMode;
  /** Collected crop clicks in image coordinates, at most 4. */
  clickBuffer: Pt[];
  banner: string | null;
}

export type UiEvent =
  | { kind: "sessionCreated"; sessionId: string }
  | { kind: "loadFailed"; message: string }
  | { kind: "enterCrop" }
  | { kind: "canvasClick"; point: Pt }
  | { kind: "cropAccepted" }
  | { kind: "cropRejected" }
  | { kind: "setMode"; mode: ScanMode }
  | { kind: "escape" }
  | { kind: "sessionLost" };

export type Effect =
  | { kind: "requestCrop"; points: Pt[] }
  | { kind: "refreshImage"; mode: ScanMode }
  | { kind: "deleteSession"; sessionId: string }
  | { kind: "flashMarkers" };

export const initialState: UiState = {
  phase: "idle",
  sessionId: null,
  mode: "thresh",
  clickBuffer: [],
  banner: null,
};

export function reduce(state: UiState, event: UiEvent): [UiState, Effect[]] {
  switch (event.kind) {
    case "sessionCreated":
      return [
        {
          phase: "loaded",
          sessionId: event.sessionId,
          mode: "thresh",
          clickBuffer: [],
          banner: null,
        },
        [{ kind: "refreshImage", mode: "thresh" }],
      ];

    case "loadFailed":
      // a failed upload is not fatal: stay idle and show what happened
      return [{ ...initialState, banner: event.message }, []];

    case "enterCrop":
      if (state.phase !== "loaded") return [state, []];
      return [{ ...state, phase: "cropping", clickBuffer: [] }, []];

    case "canvasClick": {
      if (state.phase !== "cropping" || state.clickBuffer.length >= 4) {
        return [state, []];
      }
      const buffer = [...state.clickBuffer, event.point];
      const effects: Effect[] =
        buffer.length === 4 ? [{ kind: "requestCrop", points: buffer }] : [];
      return [{ ...state, clickBuffer: buffer }, effects];
    }

    case "cropAccepted":
      return [{ ...state, phase: "loaded", clickBuffer: [] }, []];

    case "cropRejected":
      // corner roles were ambiguous: clear the buffer and collect again
      return [
        { ...state, phase: "cropping", clickBuffer: [], banner: "re-click corners" },
        [{ kind: "flashMarkers" }],
      ];

    case "setMode":
      if (state.phase !== "loaded" || state.mode === event.mode) return [state, []];
      return [
        { ...state, mode: event.mode },
        [{ kind: "refreshImage", mode: event.mode }],
      ];

    case "escape":
      if (state.phase === "cropping") {
        return [{ ...state, phase: "loaded", clickBuffer: [] }, []];
      }
      if (state.phase === "loaded" && state.sessionId !== null) {
        return [
          { ...initialState },
          [{ kind: "deleteSession", sessionId: state.sessionId }],
        ];
      }
      return [state, []];

    case "sessionLost":
      return [{ ...initialState, phase: "error", banner: "session expired" }, []];
  }
}

import type { Pt, ScanMode, SessionCreated } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
  ) {
    super(`service error ${status}: ${code}`);
  }
}

async function errorCode(res: Response): Promise<string> {
  try {
    const body = (await res.json()) as { error?: string };
    return body.error ?? res.statusText;
  } catch {
    return res.statusText;
  }
}

/** Thin typed client for the scanning service; one method per endpoint. */
export class ScanClient {
  constructor(private readonly base: string = "") {}

  async createSession(image: Blob): Promise<SessionCreated> {
    const res = await fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": image.type || "application/octet-stream" },
      body: image,
    });
    if (!res.ok) throw new ApiError(res.status, await errorCode(res));
    return (await res.json()) as SessionCreated;
  }

  async fetchImage(id: string, mode?: ScanMode): Promise<Blob> {
    const suffix = mode ? `?mode=${mode}` : "";
    const res = await fetch(`${this.base}/sessions/${id}/image${suffix}`, {
      cache: "no-store",
    });
    if (!res.ok) throw new ApiError(res.status, await errorCode(res));
    return res.blob();
  }

  async crop(id: string, points: Pt[]): Promise<Blob> {
    const res = await fetch(`${this.base}/sessions/${id}/crop`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ points }),
    });
    if (!res.ok) throw new ApiError(res.status, await errorCode(res));
    return res.blob();
  }

  async rotate(id: string, dir: "left" | "right"): Promise<Blob> {
    const res = await fetch(`${this.base}/sessions/${id}/rotate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dir }),
    });
    if (!res.ok) throw new ApiError(res.status, await errorCode(res));
    return res.blob();
  }

  async save(id: string): Promise<string> {
    const res = await fetch(`${this.base}/sessions/${id}/save`, { method: "POST" });
    if (!res.ok) throw new ApiError(res.status, await errorCode(res));
    const body = (await res.json()) as { path: string };
    return body.path;
  }

  async deleteSession(id: string): Promise<void> {
    const res = await fetch(`${this.base}/sessions/${id}`, { method: "DELETE" });
    if (!res.ok && res.status !== 404) {
      throw new ApiError(res.status, await errorCode(res));
    }
  }
}

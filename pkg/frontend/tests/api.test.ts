import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiError, ScanClient } from "../src/api.js";

type Call = { url: string; init?: RequestInit };

function stubFetch(status: number, body: BodyInit | null, contentType = "application/json") {
  const calls: Call[] = [];
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string, init?: RequestInit) => {
      calls.push({ url, init });
      return new Response(body, { status, headers: { "content-type": contentType } });
    }),
  );
  return calls;
}

afterEach(() => vi.unstubAllGlobals());

describe("ScanClient", () => {
  it("posts the raw image body and parses the created session", async () => {
    const calls = stubFetch(
      201,
      JSON.stringify({
        id: "s1",
        detected_quad: {
          tl: { x: 0, y: 0 },
          tr: { x: 9, y: 0 },
          bl: { x: 0, y: 9 },
          br: { x: 9, y: 9 },
        },
      }),
    );
    const client = new ScanClient("http://svc");
    const blob = new Blob([new Uint8Array([1, 2, 3])], { type: "image/png" });
    const created = await client.createSession(blob);
    expect(created.id).toBe("s1");
    expect(created.detected_quad.br).toEqual({ x: 9, y: 9 });
    expect(calls[0].url).toBe("http://svc/sessions");
    expect(calls[0].init?.method).toBe("POST");
    expect((calls[0].init?.headers as Record<string, string>)["content-type"]).toBe("image/png");
  });

  it("surfaces the service's error code", async () => {
    stubFetch(422, JSON.stringify({ error: "no_document" }));
    const client = new ScanClient();
    const blob = new Blob([new Uint8Array([0])], { type: "image/png" });
    await expect(client.createSession(blob)).rejects.toMatchObject({
      status: 422,
      code: "no_document",
    });
  });

  it("builds the mode query for image fetches", async () => {
    const calls = stubFetch(200, new Uint8Array([137, 80]).buffer, "image/png");
    const client = new ScanClient();
    await client.fetchImage("s1", "color");
    expect(calls[0].url).toBe("/sessions/s1/image?mode=color");
    await client.fetchImage("s1");
    expect(calls[1].url).toBe("/sessions/s1/image");
  });

  it("sends crop points as JSON and yields the image blob", async () => {
    const calls = stubFetch(200, new Uint8Array([1]).buffer, "image/png");
    const client = new ScanClient();
    const points = [
      { x: 0, y: 0 },
      { x: 9, y: 0 },
      { x: 0, y: 9 },
      { x: 9, y: 9 },
    ];
    const blob = await client.crop("s1", points);
    expect(blob.size).toBe(1);
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({ points });
  });

  it("maps a 409 crop rejection to an ApiError", async () => {
    stubFetch(409, JSON.stringify({ error: "reclick_corners" }));
    const client = new ScanClient();
    await expect(client.crop("s1", [])).rejects.toBeInstanceOf(ApiError);
    await expect(client.crop("s1", [])).rejects.toMatchObject({ code: "reclick_corners" });
  });

  it("rotates with the key convention payload", async () => {
    const calls = stubFetch(200, new Uint8Array([1]).buffer, "image/png");
    const client = new ScanClient();
    await client.rotate("s1", "right");
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({ dir: "right" });
  });

  it("returns the saved path", async () => {
    stubFetch(200, JSON.stringify({ path: "/tmp/Scanned.jpg" }));
    const client = new ScanClient();
    expect(await client.save("s1")).toBe("/tmp/Scanned.jpg");
  });

  it("treats delete of a missing session as success", async () => {
    stubFetch(404, JSON.stringify({ error: "unknown session" }));
    const client = new ScanClient();
    await expect(client.deleteSession("gone")).resolves.toBeUndefined();
  });
});

/** Typed client for the workbench HTTP API. No algebra happens here:
 * every number shown in the UI comes back from the service verbatim. */
export class ApiError extends Error {
    constructor(status, reason) {
        super(`${status}: ${reason}`);
        this.status = status;
        this.reason = reason;
    }
}
export class WorkbenchClient {
    constructor(base = "", fetchImpl = (url, init) => fetch(url, init)) {
        this.base = base;
        this.fetchImpl = fetchImpl;
    }
    async request(method, path, body) {
        const init = { method };
        if (body !== undefined) {
            init.body = JSON.stringify(body);
            init.headers = { "Content-Type": "application/json" };
        }
        const response = await this.fetchImpl(this.base + path, init);
        const text = await response.text();
        let doc = null;
        try {
            doc = text ? JSON.parse(text) : null;
        }
        catch {
            throw new ApiError(response.status, "malformed response");
        }
        if (!response.ok) {
            const reason = doc && typeof doc === "object" && "reason" in doc
                ? String(doc.reason)
                : `http ${response.status}`;
            throw new ApiError(response.status, reason);
        }
        return doc;
    }
    listExamples() {
        return this.request("GET", "/api/examples");
    }
    createSession(payload) {
        return this.request("POST", "/api/sessions", payload);
    }
    getSession(id) {
        return this.request("GET", `/api/sessions/${id}`);
    }
    /** index is 1-based, matching the service wire format. */
    mutate(id, index) {
        return this.request("POST", `/api/sessions/${id}/mutations`, { index });
    }
    undo(id) {
        return this.request("POST", `/api/sessions/${id}/undo`);
    }
    exchange(id, depth) {
        return this.request("GET", `/api/sessions/${id}/exchange?depth=${depth}`);
    }
}
